//! Lie algebras with an `R`-module structure and an anchor into `Der_K(R)`,
//! and the checks that make such data a Lie-Rinehart algebra.
//!
//! `L` is finite-dimensional over `K`, and the action of `R` on `L` is given
//! by a `K`-valued tensor (`e_i·ξ_a = Σ_b m[i][a][b] ξ_b`), most often coming
//! from a character `χ` via `r·ξ = χ(r) ξ`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::finalg::{
    check_algebra_axioms, check_character, check_derivation, derivation_commutator, AlgebraElement, Character,
    CommAlgebra, Derivation,
};
use crate::report::{VerdictReport, Witness};
use crate::scalars::{format_combination, is_zero_vector, FieldSpec, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("bracket index ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("bracket constant ({0}, {1}, {2}) given twice")]
    DuplicateConstant(usize, usize, usize),
    #[error("{what}: expected {expected}, got {got}")]
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("components live over different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("refused: {check} failed{}", .report.first_witness().map(|w| format!(" ({} at {})", w.property, w.at.join(", "))).unwrap_or_default())]
    Refused { check: String, report: Box<VerdictReport> },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl LieError {
    fn refused(report: VerdictReport) -> Self {
        // point at the innermost failing check
        let mut node = &report;
        while let Some(child) = node.sections.iter().find(|s| !s.passed()) {
            node = child;
        }
        LieError::Refused {
            check: node.check.clone(),
            report: Box::new(node.clone()),
        }
    }
}

/// `[ξ_a, ξ_b] = Σ_c f[a][b][c] ξ_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    /// Sparse constants `(a, b, c, f)`. The tensor is taken as given; both
    /// `[a,b]` and `[b,a]` must be listed for a nonzero bracket.
    pub fn from_brackets(
        field: FieldSpec,
        labels: Vec<String>,
        constants: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, LieError> {
        let m = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        let mut brackets = vec![vec![vec![field.zero(); m]; m]; m];
        let mut given = BTreeSet::new();
        for (a, b, c, f) in constants {
            if *a >= m || *b >= m || *c >= m {
                return Err(LieError::IndexOutOfRange(*a, *b, *c));
            }
            if f.field() != field {
                return Err(LieError::FieldMismatch(field, f.field()));
            }
            if !given.insert((*a, *b, *c)) {
                return Err(LieError::DuplicateConstant(*a, *b, *c));
            }
            brackets[*a][*b][*c] = f.clone();
        }
        Ok(LieAlgebra { field, labels, brackets })
    }

    pub fn abelian(field: FieldSpec, labels: Vec<String>) -> Result<Self, LieError> {
        Self::from_brackets(field, labels, &[])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Coordinates of `[ξ_a, ξ_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> &[Scalar] {
        &self.brackets[a][b]
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket_of(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let m = self.dim();
        let mut out = vec![self.field.zero(); m];
        for (a, ua) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, vb) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = ua * vb;
                for (c, f) in self.brackets[a][b].iter().enumerate() {
                    if !f.is_zero() {
                        out[c] = &out[c] + &(&s * f);
                    }
                }
            }
        }
        out
    }

    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let m = self.dim();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if !self.brackets[a][b][c].is_zero() {
                        out.push((a, b, c, self.brackets[a][b][c].clone()));
                    }
                }
            }
        }
        out
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        format_combination(v.iter().zip(self.labels.iter().map(String::as_str)))
    }

    fn basis(&self, a: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[a] = self.field.one();
        v
    }
}

/// The left `R`-module structure on `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleAction {
    /// `r·ξ = χ(r) ξ`.
    Character(Character),
    /// `tensor[i][a][b]`: coefficient of `ξ_b` in `e_i·ξ_a`.
    Tensor(Vec<Vec<Vec<Scalar>>>),
}

impl ModuleAction {
    /// Coefficient of `ξ_b` in `e_i·ξ_a`.
    pub fn coefficient(&self, i: usize, a: usize, b: usize) -> Scalar {
        match self {
            ModuleAction::Character(chi) if a == b => chi.value(i).clone(),
            ModuleAction::Character(chi) => chi.value(i).field().zero(),
            ModuleAction::Tensor(t) => t[i][a][b].clone(),
        }
    }

    /// `e_i·v` for a coordinate vector `v` in `L`.
    pub fn act_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        match self {
            ModuleAction::Character(chi) => v.iter().map(|c| c * chi.value(i)).collect(),
            ModuleAction::Tensor(t) => {
                let m = v.len();
                let field = t[i].first().and_then(|r| r.first()).map(Scalar::field);
                let Some(field) = field else { return v.to_vec() };
                let mut out = vec![field.zero(); m];
                for (a, va) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for b in 0..m {
                        if !t[i][a][b].is_zero() {
                            out[b] = &out[b] + &(va * &t[i][a][b]);
                        }
                    }
                }
                out
            }
        }
    }

    /// `r·v` for `r ∈ R`.
    pub fn act(&self, r: &AlgebraElement, v: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
        let mut out = vec![field.zero(); v.len()];
        for (i, ri) in r.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, w) in out.iter_mut().zip(self.act_basis(i, v)) {
                *o = &*o + &(ri * &w);
            }
        }
        out
    }

    /// The full `m_action` tensor.
    pub fn tensor(&self, n: usize, m: usize) -> Vec<Vec<Vec<Scalar>>> {
        (0..n)
            .map(|i| (0..m).map(|a| (0..m).map(|b| self.coefficient(i, a, b)).collect()).collect())
            .collect()
    }

    pub fn character(&self) -> Option<&Character> {
        match self {
            ModuleAction::Character(c) => Some(c),
            ModuleAction::Tensor(_) => None,
        }
    }
}

/// One derivation `ρ(ξ_a)` per basis vector of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    maps: Vec<Derivation>,
}

impl Anchor {
    pub fn new(maps: Vec<Derivation>) -> Self {
        Anchor { maps }
    }

    pub fn zero(r: &CommAlgebra, l: &LieAlgebra) -> Self {
        Anchor {
            maps: (0..l.dim()).map(|_| Derivation::zero(r)).collect(),
        }
    }

    pub fn get(&self, a: usize) -> &Derivation {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Derivation] {
        &self.maps
    }

    /// `ρ(v)` for a coordinate vector `v` in `L`.
    pub fn of(&self, v: &[Scalar], r: &CommAlgebra) -> Derivation {
        v.iter()
            .zip(&self.maps)
            .filter(|(c, _)| !c.is_zero())
            .fold(Derivation::zero(r), |acc, (c, d)| acc.add(&d.scale(c)))
    }
}

fn format_derivation(r: &CommAlgebra, d: &Derivation) -> String {
    let parts: Vec<String> = (0..r.dim())
        .filter(|&i| !d.image(i).is_zero())
        .map(|i| format!("{} -> {}", r.label(i), r.format(&d.image(i))))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRinehartData {
    r: CommAlgebra,
    l: LieAlgebra,
    action: ModuleAction,
    anchor: Anchor,
    validated: bool,
}

impl LieRinehartData {
    /// Assembles unvalidated data after checking shapes and fields.
    pub fn new(r: CommAlgebra, l: LieAlgebra, action: ModuleAction, anchor: Anchor) -> Result<Self, LieError> {
        let (n, m) = (r.dim(), l.dim());
        if r.field() != l.field() {
            return Err(LieError::FieldMismatch(r.field(), l.field()));
        }
        if anchor.maps.len() != m {
            return Err(LieError::Shape {
                what: "anchor derivations",
                expected: m,
                got: anchor.maps.len(),
            });
        }
        for d in &anchor.maps {
            if d.matrix().rows() != n || d.matrix().field() != r.field() {
                return Err(LieError::Shape {
                    what: "anchor matrix size",
                    expected: n,
                    got: d.matrix().rows(),
                });
            }
        }
        match &action {
            ModuleAction::Character(chi) => {
                if chi.values().len() != n {
                    return Err(LieError::Shape {
                        what: "character values",
                        expected: n,
                        got: chi.values().len(),
                    });
                }
                if let Some(v) = chi.values().iter().find(|v| v.field() != r.field()) {
                    return Err(LieError::FieldMismatch(r.field(), v.field()));
                }
            }
            ModuleAction::Tensor(t) => {
                let ok = t.len() == n && t.iter().all(|ti| ti.len() == m && ti.iter().all(|row| row.len() == m));
                if !ok {
                    return Err(LieError::Shape {
                        what: "action tensor (n x m x m)",
                        expected: n * m * m,
                        got: t.iter().flatten().map(Vec::len).sum(),
                    });
                }
                if let Some(v) = t.iter().flatten().flatten().find(|v| v.field() != r.field()) {
                    return Err(LieError::FieldMismatch(r.field(), v.field()));
                }
            }
        }
        Ok(LieRinehartData {
            r,
            l,
            action,
            anchor,
            validated: false,
        })
    }

    /// Runs every Lie-Rinehart check and marks the data validated.
    pub fn validate(mut self) -> Result<Self, LieError> {
        let report = check_lie_rinehart(&self);
        if !report.passed() {
            return Err(LieError::refused(report));
        }
        self.validated = true;
        Ok(self)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
    pub fn r(&self) -> &CommAlgebra {
        &self.r
    }
    pub fn l(&self) -> &LieAlgebra {
        &self.l
    }
    pub fn action(&self) -> &ModuleAction {
        &self.action
    }
    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }
    pub fn field(&self) -> FieldSpec {
        self.r.field()
    }
}

/// Antisymmetry over all pairs first, then Jacobi over all triples.
pub fn check_lie_algebra(l: &LieAlgebra) -> VerdictReport {
    const CHECK: &str = "Lie algebra axioms";
    let m = l.dim();
    for a in 0..m {
        for b in a..m {
            let ab = l.bracket(a, b);
            let ba: Vec<Scalar> = l.bracket(b, a).iter().map(|c| -c).collect();
            if ab != ba.as_slice() || (a == b && !is_zero_vector(ab)) {
                return VerdictReport::fail(
                    CHECK,
                    Witness::new(
                        "antisymmetry",
                        vec![l.label(a).into(), l.label(b).into()],
                        l.format(ab),
                        l.format(&ba),
                    ),
                );
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let (xa, xb, xc) = (l.basis(a), l.basis(b), l.basis(c));
                let t1 = l.bracket_of(&l.bracket_of(&xa, &xb), &xc);
                let t2 = l.bracket_of(&l.bracket_of(&xb, &xc), &xa);
                let t3 = l.bracket_of(&l.bracket_of(&xc, &xa), &xb);
                let sum: Vec<Scalar> = t1.iter().zip(&t2).zip(&t3).map(|((p, q), r)| &(p + q) + r).collect();
                if !is_zero_vector(&sum) {
                    return VerdictReport::fail(
                        CHECK,
                        Witness::new(
                            "Jacobi identity",
                            vec![l.label(a).into(), l.label(b).into(), l.label(c).into()],
                            l.format(&sum),
                            "0",
                        ),
                    );
                }
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// Unit acts as the identity and `(e_i e_j)·ξ = e_i·(e_j·ξ)`.
pub fn check_module_action(data: &LieRinehartData) -> VerdictReport {
    const CHECK: &str = "R-module structure on L";
    let (r, l, act) = (&data.r, &data.l, &data.action);
    let field = r.field();
    for a in 0..l.dim() {
        let xa = l.basis(a);
        let one = act.act_basis(0, &xa);
        if one != xa {
            return VerdictReport::fail(
                CHECK,
                Witness::new("unit acts trivially", vec![r.label(0).into(), l.label(a).into()], l.format(&one), l.format(&xa)),
            );
        }
    }
    for i in 0..r.dim() {
        for j in 0..r.dim() {
            for a in 0..l.dim() {
                let xa = l.basis(a);
                let prod = AlgebraElement(r.product(i, j).to_vec());
                let lhs = act.act(&prod, &xa, field);
                let rhs = act.act_basis(i, &act.act_basis(j, &xa));
                if lhs != rhs {
                    return VerdictReport::fail(
                        CHECK,
                        Witness::new(
                            "associativity of action",
                            vec![r.label(i).into(), r.label(j).into(), l.label(a).into()],
                            l.format(&lhs),
                            l.format(&rhs),
                        ),
                    );
                }
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// Every `ρ(ξ_a)` satisfies the Leibniz rule on `R`.
pub fn check_anchor_derivations(data: &LieRinehartData) -> VerdictReport {
    let sections = (0..data.l.dim())
        .map(|a| {
            let mut rep = check_derivation(&data.r, data.anchor.get(a).matrix());
            rep.check = format!("anchor of {} is a derivation", data.l.label(a));
            rep
        })
        .collect();
    VerdictReport::all_of("anchor lands in Der(R)", sections)
}

/// `ρ([ξ_a, ξ_b]) = [ρ(ξ_a), ρ(ξ_b)]` for every basis pair.
pub fn check_anchor_lie_hom(data: &LieRinehartData) -> VerdictReport {
    const CHECK: &str = "anchor is a Lie algebra map";
    let (r, l, rho) = (&data.r, &data.l, &data.anchor);
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let lhs = rho.of(l.bracket(a, b), r);
            let rhs = derivation_commutator(rho.get(a), rho.get(b));
            if lhs != rhs {
                return VerdictReport::fail(
                    CHECK,
                    Witness::new(
                        "bracket compatibility",
                        vec![l.label(a).into(), l.label(b).into()],
                        format_derivation(r, &lhs),
                        format_derivation(r, &rhs),
                    ),
                );
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// `ρ(e_i·ξ_a)(e_j) = e_i·ρ(ξ_a)(e_j)` for all `i, a, j`.
pub fn check_anchor_r_linear(data: &LieRinehartData) -> VerdictReport {
    const CHECK: &str = "anchor is R-linear";
    let (r, l, act, rho) = (&data.r, &data.l, &data.action, &data.anchor);
    for i in 0..r.dim() {
        let ei = r.basis_element(i);
        for a in 0..l.dim() {
            let moved = rho.of(&act.act_basis(i, &l.basis(a)), r);
            for j in 0..r.dim() {
                let lhs = moved.image(j);
                let rhs = r.mul(&ei, &rho.get(a).image(j));
                if lhs != rhs {
                    return VerdictReport::fail(
                        CHECK,
                        Witness::new(
                            "R-linearity",
                            vec![r.label(i).into(), l.label(a).into(), r.label(j).into()],
                            r.format(&lhs),
                            r.format(&rhs),
                        ),
                    );
                }
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// `[ξ_a, e_i·ξ_b] = e_i·[ξ_a, ξ_b] + ρ(ξ_a)(e_i)·ξ_b`, in `L`-coordinates,
/// over triples `(e_i, ξ_a, ξ_b)` in lexicographic order.
pub fn check_leibniz(data: &LieRinehartData) -> VerdictReport {
    const CHECK: &str = "Leibniz compatibility";
    let (r, l, act, rho) = (&data.r, &data.l, &data.action, &data.anchor);
    let field = r.field();
    for i in 0..r.dim() {
        for a in 0..l.dim() {
            let xa = l.basis(a);
            let shift = rho.get(a).image(i);
            for b in 0..l.dim() {
                let xb = l.basis(b);
                let lhs = l.bracket_of(&xa, &act.act_basis(i, &xb));
                let first = act.act_basis(i, l.bracket(a, b));
                let second = act.act(&shift, &xb, field);
                let rhs: Vec<Scalar> = first.iter().zip(&second).map(|(p, q)| p + q).collect();
                if lhs != rhs {
                    return VerdictReport::fail(
                        CHECK,
                        Witness::new(
                            "Leibniz rule in L",
                            vec![r.label(i).into(), l.label(a).into(), l.label(b).into()],
                            l.format(&lhs),
                            l.format(&rhs),
                        ),
                    );
                }
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// Every check that makes the data a Lie-Rinehart algebra.
pub fn check_lie_rinehart(data: &LieRinehartData) -> VerdictReport {
    let mut sections = vec![check_algebra_axioms(&data.r), check_lie_algebra(&data.l)];
    if let ModuleAction::Character(chi) = &data.action {
        sections.push(check_character(&data.r, chi.values()));
    }
    sections.extend([
        check_module_action(data),
        check_anchor_derivations(data),
        check_anchor_lie_hom(data),
        check_anchor_r_linear(data),
        check_leibniz(data),
    ]);
    VerdictReport::all_of("Lie-Rinehart algebra", sections)
}

/// For the action `r·ξ = χ(r)ξ`: the data is Lie-Rinehart iff `ρ` is
/// `R`-linear and every `ρ(ξ)(r)` lies in `ker χ`.
pub fn character_criterion(r: &CommAlgebra, l: &LieAlgebra, anchor: &Anchor, chi: &Character) -> VerdictReport {
    let linear = (|| {
        for i in 0..r.dim() {
            let ei = r.basis_element(i);
            for a in 0..l.dim() {
                for j in 0..r.dim() {
                    let image = anchor.get(a).image(j);
                    let lhs = image.scale(chi.value(i));
                    let rhs = r.mul(&ei, &image);
                    if lhs != rhs {
                        return Some(Witness::new(
                            "χ(r)·ρ(ξ)(s) = r·ρ(ξ)(s)",
                            vec![r.label(i).into(), l.label(a).into(), r.label(j).into()],
                            r.format(&lhs),
                            r.format(&rhs),
                        ));
                    }
                }
            }
        }
        None
    })();
    let kernel = (|| {
        for a in 0..l.dim() {
            for i in 0..r.dim() {
                let v = chi.eval(&anchor.get(a).image(i));
                if !v.is_zero() {
                    return Some(Witness::new(
                        "χ(ρ(ξ)(r)) = 0",
                        vec![l.label(a).into(), r.label(i).into()],
                        v,
                        0,
                    ));
                }
            }
        }
        None
    })();
    VerdictReport::all_of(
        "character-module criterion",
        vec![
            VerdictReport::from_witness("anchor R-linear under the character action", linear),
            VerdictReport::from_witness("anchor values in ker χ", kernel),
        ],
    )
}

/// Builds the Lie-Rinehart algebra with `r·ξ = χ(r)ξ`, refusing (with the
/// failing check's witness) unless every component and the criterion pass.
pub fn make_character_module(
    r: CommAlgebra,
    l: LieAlgebra,
    anchor: Anchor,
    chi: Character,
) -> Result<LieRinehartData, LieError> {
    let data = LieRinehartData::new(r, l, ModuleAction::Character(chi.clone()), anchor)?;
    let pre = VerdictReport::all_of(
        "character module inputs",
        vec![
            check_algebra_axioms(&data.r),
            check_lie_algebra(&data.l),
            check_character(&data.r, chi.values()),
            check_anchor_derivations(&data),
            check_anchor_lie_hom(&data),
            character_criterion(&data.r, &data.l, &data.anchor, &chi),
        ],
    );
    if !pre.passed() {
        return Err(LieError::refused(pre));
    }
    data.validate()
}
