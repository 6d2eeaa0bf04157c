//! Right-module extensions of multiplication on `R`, and the obstruction to
//! them for character modules.
//!
//! A right `V(R, L)`-module structure on `R` extending multiplication is
//! determined by `∂(ξ) = 1 ◁ ξ̄`. For the action `r·ξ = χ(r)ξ`, such a `∂`
//! must satisfy, for all basis elements,
//!
//! ```text
//! ρ(ξ)(r) = ∂(ξ)·(r − χ(r))
//! ∂([ξ, ζ]) = ρ(ξ)(∂(ζ)) − ρ(ζ)(∂(ξ))
//! ```
//!
//! [`solve_partial`] decides this linear system with a certificate,
//! [`verify_partial`] re-checks a candidate directly, and
//! [`build_and_verify_right_action`] checks the induced action against every
//! defining relation of the presentation.

use serde::Serialize;
use thiserror::Error;

use crate::enveloping::{EnvelopingError, NCElement, RewriteSystem, TruncatedEnvelope, DEFAULT_DEGREE};
use crate::finalg::{check_algebra_axioms, check_character, AlgebraElement};
use crate::lierinehart::{character_criterion, check_lie_algebra, LieError, LieRinehartData, ModuleAction};
use crate::presets;
use crate::report::{Certificate, CertificateKind, Verdict, VerdictReport, Witness};
use crate::scalars::{FieldSpec, LinearSystem, Scalar, SolveOutcome};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObstructionError {
    #[error("the ∂ equations are only available for character actions; this data has a tensor action")]
    NotCharacterAction,
    #[error("partial map has {got} values but L has dimension {expected}")]
    Shape { expected: usize, got: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Enveloping(#[from] EnvelopingError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("step {step:?} returned {found} where {expected} was expected")]
    UnexpectedVerdict {
        step: String,
        expected: Verdict,
        found: Verdict,
        report: Box<VerdictReport>,
    },
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
}

/// A candidate `∂: L → R`, one value per basis vector of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialMap {
    pub values: Vec<AlgebraElement>,
    /// Dimension of the solution space the value was drawn from (0 when unknown).
    pub free_parameters: usize,
}

impl PartialMap {
    pub fn new(values: Vec<AlgebraElement>) -> Self {
        PartialMap {
            values,
            free_parameters: 0,
        }
    }

    pub fn zero(data: &LieRinehartData) -> Self {
        PartialMap::new(vec![data.r().zero(); data.l().dim()])
    }
}

fn character(data: &LieRinehartData) -> Result<&crate::finalg::Character, ObstructionError> {
    match data.action() {
        ModuleAction::Character(c) => Ok(c),
        ModuleAction::Tensor(_) => Err(ObstructionError::NotCharacterAction),
    }
}

/// The linear system in the coefficients of every `∂(ξ_a)`, with its outcome.
#[derive(Debug, Clone)]
pub struct PartialSolve {
    pub system: LinearSystem,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub outcome: SolveOutcome,
}

impl PartialSolve {
    pub fn is_feasible(&self) -> bool {
        self.outcome.is_feasible()
    }

    pub fn verify(&self) -> bool {
        self.outcome.verify(&self.system)
    }

    /// The particular solution as a partial map.
    pub fn partial_map(&self, data: &LieRinehartData) -> Option<PartialMap> {
        let SolveOutcome::Feasible { witness, nullity, .. } = &self.outcome else {
            return None;
        };
        let n = data.r().dim();
        let values = witness.chunks(n).map(|c| AlgebraElement(c.to_vec())).collect();
        Some(PartialMap {
            values,
            free_parameters: *nullity,
        })
    }

    /// Basis of the homogeneous solutions, as partial maps.
    pub fn free_directions(&self, data: &LieRinehartData) -> Vec<PartialMap> {
        let SolveOutcome::Feasible { nullspace, .. } = &self.outcome else {
            return Vec::new();
        };
        let n = data.r().dim();
        nullspace
            .iter()
            .map(|v| PartialMap::new(v.chunks(n).map(|c| AlgebraElement(c.to_vec())).collect()))
            .collect()
    }

    pub fn report(&self, data: &LieRinehartData) -> VerdictReport {
        let (verdict, kind, entries) = match &self.outcome {
            SolveOutcome::Feasible { witness, .. } => (
                Verdict::Feasible,
                CertificateKind::Solution,
                labelled(&self.column_labels, witness),
            ),
            SolveOutcome::Infeasible { certificate } => (
                Verdict::Infeasible,
                CertificateKind::Farkas,
                labelled(&self.row_labels, certificate),
            ),
        };
        let mut rep = VerdictReport::new("right-module extension (∂ equations)", verdict);
        rep.certificates.push(Certificate {
            kind,
            system: format!("{} equations in {} unknowns", self.system.rows(), self.system.cols()),
            entries,
            verified: self.verify(),
        });
        if let Some(p) = self.partial_map(data) {
            let shown: Vec<String> = p
                .values
                .iter()
                .enumerate()
                .map(|(a, v)| format!("∂({}) = {}", data.l().label(a), data.r().format(v)))
                .collect();
            rep.push_step("particular solution", Verdict::Feasible, shown.join(", "));
            rep.push_step("free parameters", Verdict::Feasible, p.free_parameters.to_string());
        }
        rep
    }
}

fn labelled(labels: &[String], v: &[Scalar]) -> Vec<(String, String)> {
    labels
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.clone(), c.to_string()))
        .collect()
}

/// Assembles and solves the ∂ equations. Unknown `a·n + k` is the
/// coefficient of `e_k` in `∂(ξ_a)`. Rows come in blocks: one per `(ξ_a, e_i)`
/// for the anchor equation, then one per pair `a < b` for the cocycle.
pub fn solve_partial(data: &LieRinehartData) -> Result<PartialSolve, ObstructionError> {
    let chi = character(data)?;
    let (r, l, rho) = (data.r(), data.l(), data.anchor());
    let field = data.field();
    let (n, m) = (r.dim(), l.dim());
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let rows = m * n * n + pairs.len() * n;
    let mut sys = LinearSystem::new(field, rows, m * n);
    let mut row_labels = Vec::with_capacity(rows);

    let mut row = 0;
    for a in 0..m {
        for i in 0..n {
            // ∂(ξ_a)·(e_i − χ(e_i)) = ρ_a(e_i)
            let shift = r.basis_element(i).sub(&r.one().scale(chi.value(i)));
            let target = rho.get(a).image(i);
            for k_out in 0..n {
                for k in 0..n {
                    let prod = r.mul(&r.basis_element(k), &shift);
                    sys.accumulate(row, a * n + k, &prod.coeffs()[k_out]).expect("in range");
                }
                sys.set_rhs(row, target.coeffs()[k_out].clone()).expect("in range");
                row_labels.push(format!(
                    "anchor eq ({}, {}) coefficient of {}",
                    l.label(a),
                    r.label(i),
                    r.label(k_out)
                ));
                row += 1;
            }
        }
    }
    for &(a, b) in &pairs {
        // Σ_c f[a][b][c] ∂(ξ_c) − ρ_a(∂(ξ_b)) + ρ_b(∂(ξ_a)) = 0
        for k_out in 0..n {
            for (c, f) in l.bracket(a, b).iter().enumerate() {
                if !f.is_zero() {
                    sys.accumulate(row, c * n + k_out, f).expect("in range");
                }
            }
            for k in 0..n {
                let (ia, ib) = (rho.get(a).image(k), rho.get(b).image(k));
                sys.accumulate(row, b * n + k, &-&ia.coeffs()[k_out]).expect("in range");
                sys.accumulate(row, a * n + k, &ib.coeffs()[k_out]).expect("in range");
            }
            row_labels.push(format!(
                "cocycle ({}, {}) coefficient of {}",
                l.label(a),
                l.label(b),
                r.label(k_out)
            ));
            row += 1;
        }
    }
    let column_labels = (0..m)
        .flat_map(|a| (0..n).map(move |k| (a, k)))
        .map(|(a, k)| format!("∂({}) coefficient of {}", l.label(a), r.label(k)))
        .collect();
    let outcome = sys.solve();
    Ok(PartialSolve {
        system: sys,
        row_labels,
        column_labels,
        outcome,
    })
}

/// Re-evaluates both ∂ conditions from the algebra operations directly.
pub fn verify_partial(data: &LieRinehartData, p: &PartialMap) -> Result<VerdictReport, ObstructionError> {
    const CHECK: &str = "∂ conditions";
    let chi = character(data)?;
    let (r, l, rho) = (data.r(), data.l(), data.anchor());
    if p.values.len() != l.dim() {
        return Err(ObstructionError::Shape {
            expected: l.dim(),
            got: p.values.len(),
        });
    }
    for v in &p.values {
        r.element(v.coeffs().to_vec()).map_err(|_| ObstructionError::Shape {
            expected: r.dim(),
            got: v.coeffs().len(),
        })?;
    }
    for a in 0..l.dim() {
        for i in 0..r.dim() {
            let ei = r.basis_element(i);
            let lhs = rho.get(a).apply(&ei);
            let rhs = r.mul(&p.values[a], &ei.sub(&r.one().scale(chi.value(i))));
            if lhs != rhs {
                return Ok(VerdictReport::fail(
                    CHECK,
                    Witness::new(
                        "ρ(ξ)(r) = ∂(ξ)·(r − χ(r))",
                        vec![l.label(a).into(), r.label(i).into()],
                        r.format(&lhs),
                        r.format(&rhs),
                    ),
                ));
            }
        }
    }
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let lhs = l
                .bracket(a, b)
                .iter()
                .zip(&p.values)
                .fold(r.zero(), |acc, (c, v)| acc.add(&v.scale(c)));
            let rhs = rho.get(a).apply(&p.values[b]).sub(&rho.get(b).apply(&p.values[a]));
            if lhs != rhs {
                return Ok(VerdictReport::fail(
                    CHECK,
                    Witness::new(
                        "∂([ξ,ζ]) = ρ(ξ)(∂ζ) − ρ(ζ)(∂ξ)",
                        vec![l.label(a).into(), l.label(b).into()],
                        r.format(&lhs),
                        r.format(&rhs),
                    ),
                ));
            }
        }
    }
    Ok(VerdictReport::pass(CHECK))
}

/// The right action induced by a candidate `∂`: `a ◁ e_i = a·e_i` and
/// `a ◁ ξ̄_b = χ(a)·∂(ξ_b)`, extended along words left to right.
pub fn right_act(
    data: &LieRinehartData,
    p: &PartialMap,
    a: &AlgebraElement,
    v: &NCElement,
) -> Result<AlgebraElement, ObstructionError> {
    let chi = character(data)?;
    let r = data.r();
    let mut total = r.zero();
    for (word, c) in v.terms() {
        let mut cur = a.clone();
        for &letter in word {
            cur = match letter {
                crate::enveloping::Letter::R(i) => r.mul(&cur, &r.basis_element(i)),
                crate::enveloping::Letter::L(b) => p.values[b].scale(&chi.eval(&cur)),
            };
        }
        total = total.add(&cur.scale(c));
    }
    Ok(total)
}

/// Checks that every defining relation, and every relation multiplied on the
/// left by a basis word of the envelope, acts as zero on every basis element
/// of `R`.
pub fn build_and_verify_right_action(
    data: &LieRinehartData,
    p: &PartialMap,
    env: &TruncatedEnvelope,
) -> Result<VerdictReport, ObstructionError> {
    const CHECK: &str = "right action on R is well defined";
    character(data)?;
    if p.values.len() != data.l().dim() {
        return Err(ObstructionError::Shape {
            expected: data.l().dim(),
            got: p.values.len(),
        });
    }
    let sys = env.system();
    let r = data.r();
    let field = data.field();
    let relations: Vec<(String, NCElement)> = sys
        .rules()
        .map(|rule| (sys.format(&rule.relation(field)), rule.relation(field)))
        .collect();
    let mut checked = 0usize;
    for prefix in env.basis() {
        let left = NCElement::word(field.one(), prefix.clone());
        for (name, rel) in &relations {
            let element = left.concat(rel);
            for i in 0..r.dim() {
                checked += 1;
                let out = right_act(data, p, &r.basis_element(i), &element)?;
                if !out.is_zero() {
                    let mut rep = VerdictReport::fail(
                        CHECK,
                        Witness::new(
                            "relation acts as zero",
                            vec![r.label(i).into(), sys.format_word(prefix), name.clone()],
                            r.format(&out),
                            "0",
                        ),
                    )
                    .with_degree(env.degree());
                    rep.push_step("evaluations", Verdict::Fail, checked.to_string());
                    return Ok(rep);
                }
            }
        }
    }
    let mut rep = VerdictReport::pass(CHECK).with_degree(env.degree());
    rep.push_step(
        "evaluations",
        Verdict::Pass,
        format!("{} relations x {} prefixes x {} basis elements", relations.len(), env.dim(), r.dim()),
    );
    Ok(rep)
}

/// Each given element must normalize to zero.
pub fn check_relations_vanish(system: &RewriteSystem, relations: &[NCElement]) -> Result<VerdictReport, EnvelopingError> {
    const CHECK: &str = "presentation relations vanish";
    for rel in relations {
        let nf = system.normal_form(rel)?;
        if !nf.is_zero() {
            return Ok(VerdictReport::fail(
                CHECK,
                Witness::new("normalizes to 0", vec![system.format(rel)], system.format(&nf), "0"),
            ));
        }
    }
    let mut rep = VerdictReport::pass(CHECK);
    let shown: Vec<String> = relations.iter().map(|r| system.format(r)).collect();
    rep.push_step("relations", Verdict::Pass, shown.join(", "));
    Ok(rep)
}

/// The verdicts of an end-to-end run, plus the full report tree.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub field: String,
    pub degree: usize,
    pub criterion_verdict: Verdict,
    pub confluence_verdict: Verdict,
    pub partial_outcome: SolveOutcome,
    pub divisibility_outcome: Option<SolveOutcome>,
    pub report: VerdictReport,
}

fn expect(step: &str, rep: &VerdictReport, expected: Verdict) -> Result<(), PipelineError> {
    if rep.verdict == expected {
        Ok(())
    } else {
        Err(PipelineError::UnexpectedVerdict {
            step: step.to_string(),
            expected,
            found: rep.verdict,
            report: Box::new(rep.clone()),
        })
    }
}

/// Builds the character-module example and verifies, in order: the
/// Lie-Rinehart criterion, confluence and the presentation, infeasibility of
/// the ∂ equations, and that `y` is not left-divisible by `x` at every
/// degree `1..=degree`.
pub fn theorem1_pipeline(field: FieldSpec, degree: usize) -> Result<ObstructionReport, PipelineError> {
    let (r, l, rho, chi) = presets::square_zero_inputs(field);
    let mut steps = Vec::new();

    let inputs = VerdictReport::all_of(
        "inputs",
        vec![
            check_algebra_axioms(&r),
            check_lie_algebra(&l),
            check_character(&r, chi.values()),
            crate::finalg::check_derivation(&r, rho.get(0).matrix()),
        ],
    );
    expect("inputs", &inputs, Verdict::Pass)?;
    steps.push(inputs);

    let criterion = character_criterion(&r, &l, &rho, &chi);
    expect("character-module criterion", &criterion, Verdict::Pass)?;
    let data = crate::lierinehart::make_character_module(r, l, rho, chi).map_err(ObstructionError::from)?;
    steps.push(criterion.clone());

    let system = RewriteSystem::new(&data).map_err(ObstructionError::from)?;
    let env = TruncatedEnvelope::new(system.clone(), degree);
    let confluence = env.confluence().clone();
    expect("local confluence", &confluence, Verdict::Pass)?;
    steps.push(confluence.clone());

    let relations = square_zero_relations(&system);
    let mut presentation = check_relations_vanish(&system, &relations).map_err(ObstructionError::from)?;
    let dims = env.dims_by_degree();
    let dim_ok = env.dim() == degree + 3;
    presentation.push_step(
        "basis dimension",
        if dim_ok { Verdict::Pass } else { Verdict::Fail },
        format!("{} (expected {}), by degree {:?}", env.dim(), degree + 3, dims),
    );
    if !dim_ok {
        presentation.verdict = Verdict::Fail;
    }
    presentation.degree_used = Some(degree);
    expect("presentation", &presentation, Verdict::Pass)?;
    steps.push(presentation);

    let partial = solve_partial(&data)?;
    let partial_report = partial.report(&data);
    expect("∂ equations", &partial_report, Verdict::Infeasible)?;
    if !partial.verify() {
        return Err(PipelineError::UnexpectedVerdict {
            step: "∂ certificate re-verification".into(),
            expected: Verdict::Pass,
            found: Verdict::Fail,
            report: Box::new(partial_report),
        });
    }
    steps.push(partial_report);

    let x = system.parse_element("x").expect("label x");
    let y = system.parse_element("y").expect("label y");
    let mut per_degree = Vec::new();
    let mut last = None;
    for d in 1..=degree {
        let env_d = TruncatedEnvelope::new(system.clone(), d);
        let div = env_d.left_divide(&x, &y).map_err(ObstructionError::from)?;
        let rep = div.report(&env_d, &x, &y);
        expect(&format!("left divisibility at degree {d}"), &rep, Verdict::Infeasible)?;
        if !div.verify() {
            return Err(PipelineError::UnexpectedVerdict {
                step: format!("divisibility certificate at degree {d}"),
                expected: Verdict::Pass,
                found: Verdict::Fail,
                report: Box::new(rep),
            });
        }
        last = Some(div.outcome.clone());
        per_degree.push(rep);
    }
    let mut antipode = VerdictReport::new("antipode obstruction: y = x z has no solution", Verdict::Infeasible)
        .with_degree(degree);
    antipode.sections = per_degree;
    steps.push(antipode);

    let mut report = VerdictReport::new(format!("right-module obstruction over {field}"), Verdict::Pass).with_degree(degree);
    report.push_step("Lie-Rinehart structure", Verdict::Pass, "character criterion holds");
    report.push_step("rewrite system", Verdict::Pass, "all critical pairs joinable");
    report.push_step("presentation", Verdict::Pass, format!("basis 1, x, y, alpha^1..{degree}"));
    report.push_step(
        "∂ equations",
        Verdict::Infeasible,
        "no right module structure on R extends multiplication (certificate attached)",
    );
    report.push_step(
        "antipode",
        Verdict::Infeasible,
        format!("y is not left-divisible by x at degrees 1..={degree}"),
    );
    report.sections = steps;

    Ok(ObstructionReport {
        field: field.to_string(),
        degree,
        criterion_verdict: criterion.verdict,
        confluence_verdict: confluence.verdict,
        partial_outcome: partial.outcome.clone(),
        divisibility_outcome: last,
        report,
    })
}

/// The full relation list `ᾱx − y, ᾱy, xᾱ, yᾱ, x², y², xy, yx`.
pub fn square_zero_relations(system: &RewriteSystem) -> Vec<NCElement> {
    ["alpha x - y", "alpha y", "x alpha", "y alpha", "x x", "y y", "x y", "y x"]
        .iter()
        .map(|s| system.parse_element(s).expect("known labels"))
        .collect()
}

/// Sanity inversion on `R = K`, one-dimensional `L`: every step should find
/// a structure rather than an obstruction.
pub fn control_pipeline(field: FieldSpec, degree: usize) -> Result<ObstructionReport, PipelineError> {
    let l = crate::lierinehart::LieAlgebra::abelian(field, vec!["alpha".into()]).map_err(ObstructionError::from)?;
    let data = presets::classical_data(l);
    let chi = crate::finalg::Character::new(vec![field.one()]);
    let criterion = character_criterion(data.r(), data.l(), data.anchor(), &chi);
    expect("character-module criterion", &criterion, Verdict::Pass)?;
    let system = RewriteSystem::new(&data).map_err(ObstructionError::from)?;
    let env = TruncatedEnvelope::new(system, degree);
    let confluence = env.confluence().clone();
    expect("local confluence", &confluence, Verdict::Pass)?;
    let partial = solve_partial(&data)?;
    let partial_report = partial.report(&data);
    expect("∂ equations", &partial_report, Verdict::Feasible)?;
    let p = partial.partial_map(&data).expect("feasible");
    let verified = verify_partial(&data, &p)?;
    expect("∂ verification", &verified, Verdict::Pass)?;
    let action = build_and_verify_right_action(&data, &p, &env)?;
    expect("right action", &action, Verdict::Pass)?;

    let mut report = VerdictReport::new(format!("control U(L) over {field}"), Verdict::Pass).with_degree(degree);
    report.sections = vec![criterion.clone(), confluence.clone(), partial_report, verified, action];
    Ok(ObstructionReport {
        field: field.to_string(),
        degree,
        criterion_verdict: criterion.verdict,
        confluence_verdict: confluence.verdict,
        partial_outcome: partial.outcome,
        divisibility_outcome: None,
        report,
    })
}

/// [`theorem1_pipeline`] at the default degree.
pub fn theorem1(field: FieldSpec) -> Result<ObstructionReport, PipelineError> {
    theorem1_pipeline(field, DEFAULT_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn square_zero_is_infeasible() {
        let data = presets::square_zero_data(q());
        let s = solve_partial(&data).unwrap();
        assert!(!s.is_feasible());
        assert!(s.verify());
        let SolveOutcome::Infeasible { certificate } = &s.outcome else { unreachable!() };
        let support: Vec<&String> = certificate
            .iter()
            .zip(&s.row_labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, l)| l)
            .collect();
        assert_eq!(support, ["anchor eq (alpha, x) coefficient of y"]);
    }

    #[test]
    fn euler_example_is_feasible_with_one_parameter() {
        let data = presets::euler_dual_data(q());
        let s = solve_partial(&data).unwrap();
        let p = s.partial_map(&data).unwrap();
        assert_eq!(p.values, vec![data.r().one()]);
        assert_eq!(p.free_parameters, 1);
        assert!(verify_partial(&data, &p).unwrap().passed());
        // ∂(α) = 1 + b x for any b
        let dir = &s.free_directions(&data)[0];
        let shifted = PartialMap::new(vec![p.values[0].add(&dir.values[0].scale(&q().from_i64(7)))]);
        assert!(verify_partial(&data, &shifted).unwrap().passed());
    }

    #[test]
    fn zero_partial_map() {
        let data = presets::square_zero_data(q());
        let rep = verify_partial(&data, &PartialMap::zero(&data)).unwrap();
        let w = rep.first_witness().unwrap();
        assert_eq!(w.at, ["alpha", "x"]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("y", "0"));

        let classical = presets::classical_data(crate::lierinehart::LieAlgebra::abelian(q(), vec!["a".into()]).unwrap());
        assert!(verify_partial(&classical, &PartialMap::zero(&classical)).unwrap().passed());
        let s = solve_partial(&classical).unwrap();
        assert_eq!(s.partial_map(&classical).unwrap().values, vec![classical.r().zero()]);
    }

    #[test]
    fn right_actions() {
        let data = presets::euler_dual_data(q());
        let env = TruncatedEnvelope::new(RewriteSystem::new(&data).unwrap(), 8);
        let p = PartialMap::new(vec![data.r().one()]);
        assert!(build_and_verify_right_action(&data, &p, &env).unwrap().passed());

        let sq = presets::square_zero_data(q());
        let env = TruncatedEnvelope::new(RewriteSystem::new(&sq).unwrap(), 3);
        let forced = PartialMap::new(vec![sq.r().one()]);
        let rep = build_and_verify_right_action(&sq, &forced, &env).unwrap();
        assert!(!rep.passed());
        let w = rep.first_witness().unwrap();
        assert_eq!(w.at[0], "1");
        assert_eq!(w.lhs, "x - y");
    }

    #[test]
    fn tensor_action_is_refused() {
        let r = crate::finalg::CommAlgebra::ground(q());
        let l = crate::lierinehart::LieAlgebra::abelian(q(), vec!["a".into()]).unwrap();
        let data = LieRinehartData::new(
            r.clone(),
            l.clone(),
            ModuleAction::Tensor(vec![vec![vec![q().one()]]]),
            crate::lierinehart::Anchor::zero(&r, &l),
        )
        .unwrap()
        .validate()
        .unwrap();
        assert_eq!(solve_partial(&data).unwrap_err(), ObstructionError::NotCharacterAction);
    }

    #[test]
    fn pipelines() {
        let rep = theorem1_pipeline(q(), 4).unwrap();
        assert_eq!(rep.criterion_verdict, Verdict::Pass);
        assert!(!rep.partial_outcome.is_feasible());
        let control = control_pipeline(q(), 4).unwrap();
        assert!(control.partial_outcome.is_feasible());
    }
}
