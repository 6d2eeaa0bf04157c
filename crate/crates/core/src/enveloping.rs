//! The enveloping algebra `V(R, L)` as a quotient of the free algebra on
//! `R`-letters and `L`-letters, presented by a terminating rewrite system.
//!
//! Every rule has a two-letter left-hand side:
//!
//! | family      | rule                                                 |
//! |-------------|------------------------------------------------------|
//! | merge       | `e_i e_j → Σ_k c[i][j][k] e_k`                       |
//! | straighten  | `ξ_a e_i → e_i ξ_a + Σ_k ρ_a(e_i)_k e_k`             |
//! | absorb      | `e_i ξ_a → Σ_b m[i][a][b] ξ_b`  (`i` not the unit)   |
//! | order       | `ξ_a ξ_b → ξ_b ξ_a + Σ_c f[a][b][c] ξ_c`  (`a > b`)  |
//!
//! The unit of `R` is the empty word. Each rule strictly lowers the measure
//! (L-letter count, R-letter count, inversions), where inversions count
//! L-letters left of R-letters plus out-of-order pairs of L-letters. The
//! irreducible words are the single R-letters and the nondecreasing L-words.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::finalg::AlgebraElement;
use crate::lierinehart::LieRinehartData;
use crate::report::{Certificate, CertificateKind, Verdict, VerdictReport, Witness};
use crate::scalars::{format_combination, FieldSpec, LinearSystem, Scalar, SolveOutcome};

/// Largest L-degree a product may reach in a division query.
pub const MAX_PRODUCT_DEGREE: usize = 64;

/// Default truncation degree for basis-dependent queries.
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvelopingError {
    #[error("Lie-Rinehart data must be validated before building its enveloping algebra")]
    Unvalidated,
    #[error("degree overflow: the product needs degree {needed} but only {available} is available")]
    DegreeOverflow { needed: usize, available: usize },
    #[error("rewrite system is not locally confluent; refusing a basis-dependent query")]
    NotConfluent(Box<VerdictReport>),
    #[error("left action on R is not well defined for this system")]
    LeftActionNotCertified(Box<VerdictReport>),
    #[error("internal error: rewriting exceeded its step budget of {0}")]
    StepBudgetExceeded(u128),
    #[error("internal error: rule for {0} does not decrease the termination measure")]
    NonDecreasingRule(String),
    #[error("word {0} is not a basis word of the truncated envelope")]
    NotInBasis(String),
    #[error("letter index out of range in {0:?}")]
    BadLetter(Letter),
    #[error("element has wrong dimension for R: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    /// Image of the basis element `e_i` of `R`.
    R(usize),
    /// Image `ξ̄_a` of the basis element `ξ_a` of `L`.
    L(usize),
}

pub type Word = Vec<Letter>;

fn l_count(w: &[Letter]) -> usize {
    w.iter().filter(|l| matches!(l, Letter::L(_))).count()
}

/// (L-letters, R-letters, inversions).
pub fn measure(w: &[Letter]) -> (usize, usize, usize) {
    let mut inversions = 0;
    let mut ls_seen: Vec<usize> = Vec::new();
    for letter in w {
        match letter {
            Letter::R(_) => inversions += ls_seen.len(),
            Letter::L(b) => {
                inversions += ls_seen.iter().filter(|&&a| a > *b).count();
                ls_seen.push(*b);
            }
        }
    }
    let ls = ls_seen.len();
    (ls, w.len() - ls, inversions)
}

/// A finite formal combination of words. No zero coefficients are stored;
/// the unit letter `R(0)` never appears inside a stored word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCElement {
    terms: BTreeMap<Word, Scalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one(field: FieldSpec) -> Self {
        NCElement::word(field.one(), vec![])
    }

    pub fn word(coeff: Scalar, word: Word) -> Self {
        let mut e = NCElement::zero();
        e.add_term(word, &coeff);
        e
    }

    pub fn letter(field: FieldSpec, l: Letter) -> Self {
        NCElement::word(field.one(), vec![l])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Scalar, Word)>) -> Self {
        let mut e = NCElement::zero();
        for (c, w) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn add_term(&mut self, mut word: Word, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        word.retain(|l| *l != Letter::R(0));
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = &*c + coeff;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Letter]) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Largest number of L-letters in any term (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| l_count(w)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> NCElement {
        NCElement::from_terms(self.terms.iter().map(|(w, c)| (c * s, w.clone())))
    }

    /// Free-algebra product (concatenation), not reduced.
    pub fn concat(&self, other: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleFamily {
    Merge,
    Straighten,
    Absorb,
    Order,
    /// Installed through [`RewriteSystem::with_rule`].
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub family: RuleFamily,
    pub lhs: (Letter, Letter),
    pub rhs: NCElement,
}

impl Rule {
    /// `lhs − rhs` as an element of the free algebra.
    pub fn relation(&self, field: FieldSpec) -> NCElement {
        NCElement::word(field.one(), vec![self.lhs.0, self.lhs.1]).sub(&self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Always rewrite the largest reducible word at its leftmost redex,
    /// merging coefficients as it goes.
    #[default]
    Leftmost,
    /// Depth-first on individual terms, rewriting at the rightmost redex,
    /// with no sharing between terms.
    Rightmost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteSystem {
    data: LieRinehartData,
    rules: BTreeMap<(Letter, Letter), Rule>,
}

impl RewriteSystem {
    /// Instantiates the four rule families from validated data.
    pub fn new(data: &LieRinehartData) -> Result<Self, EnvelopingError> {
        if !data.is_validated() {
            return Err(EnvelopingError::Unvalidated);
        }
        let (r, l) = (data.r(), data.l());
        let field = data.field();
        let (n, m) = (r.dim(), l.dim());
        let mut rules = BTreeMap::new();
        let mut put = |family, lhs: (Letter, Letter), rhs: NCElement| {
            rules.insert(lhs, Rule { family, lhs, rhs });
        };
        let r_letter = |k: usize| if k == 0 { vec![] } else { vec![Letter::R(k)] };

        for i in 1..n {
            for j in 1..n {
                let rhs = NCElement::from_terms(r.product(i, j).iter().enumerate().map(|(k, c)| (c.clone(), r_letter(k))));
                put(RuleFamily::Merge, (Letter::R(i), Letter::R(j)), rhs);
            }
        }
        for a in 0..m {
            for i in 1..n {
                let mut rhs = NCElement::word(field.one(), vec![Letter::R(i), Letter::L(a)]);
                for (k, c) in data.anchor().get(a).image(i).coeffs().iter().enumerate() {
                    rhs.add_term(r_letter(k), c);
                }
                put(RuleFamily::Straighten, (Letter::L(a), Letter::R(i)), rhs);
            }
        }
        for i in 1..n {
            for a in 0..m {
                let rhs = NCElement::from_terms((0..m).map(|b| (data.action().coefficient(i, a, b), vec![Letter::L(b)])));
                put(RuleFamily::Absorb, (Letter::R(i), Letter::L(a)), rhs);
            }
        }
        for a in 0..m {
            for b in 0..a {
                let mut rhs = NCElement::word(field.one(), vec![Letter::L(b), Letter::L(a)]);
                for (c, f) in l.bracket(a, b).iter().enumerate() {
                    rhs.add_term(vec![Letter::L(c)], f);
                }
                put(RuleFamily::Order, (Letter::L(a), Letter::L(b)), rhs);
            }
        }
        Ok(RewriteSystem { data: data.clone(), rules })
    }

    /// Replaces (or adds) the rule for `lhs`. For experiments on altered
    /// presentations; the termination measure is still enforced while
    /// rewriting.
    pub fn with_rule(mut self, lhs: (Letter, Letter), rhs: NCElement) -> Self {
        self.rules.insert(
            lhs,
            Rule {
                family: RuleFamily::Custom,
                lhs,
                rhs,
            },
        );
        self
    }

    pub fn data(&self) -> &LieRinehartData {
        &self.data
    }

    pub fn field(&self) -> FieldSpec {
        self.data.field()
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn rule(&self, lhs: (Letter, Letter)) -> Option<&Rule> {
        self.rules.get(&lhs)
    }

    /// All letters except the unit: `R(1..n)` then `L(0..m)`.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.data.r().dim();
        let m = self.data.l().dim();
        (1..n).map(Letter::R).chain((0..m).map(Letter::L)).collect()
    }

    pub fn letter_label(&self, l: Letter) -> &str {
        match l {
            Letter::R(i) => self.data.r().label(i),
            Letter::L(a) => self.data.l().label(a),
        }
    }

    /// Looks a label up among the R-labels, then the L-labels.
    pub fn letter_by_label(&self, label: &str) -> Option<Letter> {
        self.data
            .r()
            .index_of(label)
            .map(Letter::R)
            .or_else(|| self.data.l().index_of(label).map(Letter::L))
    }

    /// Space-separated letters with L-letters overlined.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&l| match l {
                Letter::R(_) => self.letter_label(l).to_string(),
                Letter::L(_) => self.letter_label(l).chars().flat_map(|c| [c, '\u{0305}']).collect(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Letters as plain labels, for structured output.
    pub fn word_labels(&self, w: &[Letter]) -> Vec<String> {
        w.iter().map(|&l| self.letter_label(l).to_string()).collect()
    }

    pub fn format(&self, e: &NCElement) -> String {
        let rendered: Vec<(String, &Scalar)> = e.terms().map(|(w, c)| (self.format_word(w), c)).collect();
        let words: Vec<String> = rendered
            .iter()
            .map(|(w, _)| if w == "1" { String::new() } else { w.clone() })
            .collect();
        format_combination(rendered.iter().zip(&words).map(|((_, c), w)| (*c, w.as_str())))
    }

    /// Parses an element such as `"alpha x - y"` over the R- and L-labels.
    pub fn parse_element(&self, text: &str) -> Result<NCElement, crate::expr::ExprError> {
        let terms = crate::expr::parse_terms(self.field(), text, |s| self.letter_by_label(s))?;
        Ok(NCElement::from_terms(terms))
    }

    fn check_letters(&self, e: &NCElement) -> Result<(), EnvelopingError> {
        let (n, m) = (self.data.r().dim(), self.data.l().dim());
        for (w, _) in e.terms() {
            for &l in w {
                let ok = match l {
                    Letter::R(i) => i < n,
                    Letter::L(a) => a < m,
                };
                if !ok {
                    return Err(EnvelopingError::BadLetter(l));
                }
            }
        }
        Ok(())
    }

    fn redex(&self, w: &[Letter], strategy: Strategy) -> Option<usize> {
        let mut positions = (0..w.len().saturating_sub(1)).filter(|&p| self.rules.contains_key(&(w[p], w[p + 1])));
        match strategy {
            Strategy::Leftmost => positions.next(),
            Strategy::Rightmost => positions.next_back(),
        }
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.redex(w, Strategy::Leftmost).is_none()
    }

    /// Rewrites `w` once at position `p`, checking the measure drops.
    fn rewrite_at(&self, w: &[Letter], p: usize) -> Result<Vec<(Word, Scalar)>, EnvelopingError> {
        let rule = &self.rules[&(w[p], w[p + 1])];
        let before = measure(w);
        let mut out = Vec::with_capacity(rule.rhs.len());
        for (mid, c) in rule.rhs.terms() {
            let mut nw = Vec::with_capacity(w.len() + mid.len());
            nw.extend_from_slice(&w[..p]);
            nw.extend_from_slice(mid);
            nw.extend_from_slice(&w[p + 2..]);
            if measure(&nw) >= before {
                return Err(EnvelopingError::NonDecreasingRule(self.format_word(&[w[p], w[p + 1]])));
            }
            out.push((nw, c.clone()));
        }
        Ok(out)
    }

    /// Number of words whose letter counts do not exceed those of `e`'s
    /// terms. Under [`Strategy::Leftmost`] no word is rewritten twice, so this
    /// bounds the number of steps.
    pub fn step_budget(&self, e: &NCElement) -> u128 {
        let ls = e.terms().map(|(w, _)| l_count(w)).max().unwrap_or(0);
        let rs = e.terms().map(|(w, _)| w.len() - l_count(w)).max().unwrap_or(0);
        let m = self.data.l().dim() as u128;
        let n = self.data.r().dim().saturating_sub(1) as u128;
        let mut total: u128 = 0;
        for l in 0..=ls {
            for r in 0..=rs {
                let arrangements = binomial((l + r) as u128, l as u128);
                let count = arrangements
                    .saturating_mul(m.saturating_pow(l as u32))
                    .saturating_mul(n.saturating_pow(r as u32));
                total = total.saturating_add(count);
            }
        }
        total
    }

    pub fn normal_form(&self, e: &NCElement) -> Result<NCElement, EnvelopingError> {
        self.normal_form_with(e, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, e: &NCElement, strategy: Strategy) -> Result<NCElement, EnvelopingError> {
        self.check_letters(e)?;
        match strategy {
            Strategy::Leftmost => self.reduce_largest_first(e),
            Strategy::Rightmost => self.reduce_depth_first(e),
        }
    }

    fn reduce_largest_first(&self, e: &NCElement) -> Result<NCElement, EnvelopingError> {
        let budget = self.step_budget(e);
        let mut pending: BTreeMap<((usize, usize, usize), Word), Scalar> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<_, Scalar>, w: Word, c: &Scalar| {
            let key = (measure(&w), w);
            match pending.get_mut(&key) {
                Some(v) => {
                    *v = &*v + c;
                    if v.is_zero() {
                        pending.remove(&key);
                    }
                }
                None => {
                    pending.insert(key, c.clone());
                }
            }
        };
        for (w, c) in e.terms() {
            push(&mut pending, w.clone(), c);
        }
        let mut out = NCElement::zero();
        let mut steps: u128 = 0;
        while let Some(((_, w), c)) = pending.pop_last() {
            let Some(p) = self.redex(&w, Strategy::Leftmost) else {
                out.add_term(w, &c);
                continue;
            };
            steps += 1;
            if steps > budget {
                return Err(EnvelopingError::StepBudgetExceeded(budget));
            }
            for (nw, d) in self.rewrite_at(&w, p)? {
                push(&mut pending, nw, &(&c * &d));
            }
        }
        Ok(out)
    }

    fn reduce_depth_first(&self, e: &NCElement) -> Result<NCElement, EnvelopingError> {
        const BUDGET: u128 = 50_000_000;
        let mut stack: Vec<(Word, Scalar)> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = NCElement::zero();
        let mut steps: u128 = 0;
        while let Some((w, c)) = stack.pop() {
            match self.redex(&w, Strategy::Rightmost) {
                None => out.add_term(w, &c),
                Some(p) => {
                    steps += 1;
                    if steps > BUDGET {
                        return Err(EnvelopingError::StepBudgetExceeded(BUDGET));
                    }
                    for (nw, d) in self.rewrite_at(&w, p)? {
                        stack.push((nw, &c * &d));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduces both sides of every overlap `abc` where `ab` and `bc` are
    /// left-hand sides, and reports the first divergence in word order.
    pub fn check_local_confluence(&self) -> VerdictReport {
        const CHECK: &str = "local confluence";
        let field = self.field();
        let alphabet = self.alphabet();
        let mut checked = 0usize;
        for &a in &alphabet {
            for &b in &alphabet {
                let Some(left) = self.rules.get(&(a, b)) else { continue };
                for &c in &alphabet {
                    let Some(right) = self.rules.get(&(b, c)) else { continue };
                    checked += 1;
                    let one_way = left.rhs.concat(&NCElement::letter(field, c));
                    let other_way = NCElement::letter(field, a).concat(&right.rhs);
                    let (x, y) = match (self.normal_form(&one_way), self.normal_form(&other_way)) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => {
                            return VerdictReport::fail(
                                CHECK,
                                Witness::new("reduction failed", self.word_labels(&[a, b, c]), e, ""),
                            )
                        }
                    };
                    if x != y {
                        let mut rep = VerdictReport::fail(
                            CHECK,
                            Witness::new(
                                "critical pair diverges",
                                self.word_labels(&[a, b, c]),
                                self.format(&x),
                                self.format(&y),
                            ),
                        );
                        rep.push_step("critical pairs examined", Verdict::Fail, checked.to_string());
                        return rep;
                    }
                }
            }
        }
        let mut rep = VerdictReport::pass(CHECK);
        rep.push_step("critical pairs examined", Verdict::Pass, format!("{checked} overlaps, all joinable"));
        rep
    }

    /// Left action of a word on `R`: letters act right to left, `e_i` by
    /// multiplication and `ξ̄_a` by the anchor.
    pub fn act_on_r(&self, v: &NCElement, r: &AlgebraElement) -> Result<AlgebraElement, EnvelopingError> {
        let alg = self.data.r();
        if r.coeffs().len() != alg.dim() {
            return Err(EnvelopingError::Dimension {
                expected: alg.dim(),
                got: r.coeffs().len(),
            });
        }
        self.check_letters(v)?;
        let mut total = alg.zero();
        for (w, c) in v.terms() {
            let mut cur = r.clone();
            for &l in w.iter().rev() {
                cur = match l {
                    Letter::R(i) => alg.mul(&alg.basis_element(i), &cur),
                    Letter::L(a) => self.data.anchor().get(a).apply(&cur),
                };
            }
            total = total.add(&cur.scale(c));
        }
        Ok(total)
    }

    /// Every defining relation must act as zero on every basis element of `R`
    /// for the left action to descend to `V(R, L)`.
    pub fn check_left_action(&self) -> VerdictReport {
        const CHECK: &str = "left action on R is well defined";
        let alg = self.data.r();
        for rule in self.rules.values() {
            let rel = rule.relation(self.field());
            for i in 0..alg.dim() {
                let out = self.act_on_r(&rel, &alg.basis_element(i)).expect("letters in range");
                if !out.is_zero() {
                    let mut at = self.word_labels(&[rule.lhs.0, rule.lhs.1]);
                    at.push(alg.label(i).to_string());
                    return VerdictReport::fail(CHECK, Witness::new("relation acts as zero", at, alg.format(&out), "0"));
                }
            }
        }
        VerdictReport::pass(CHECK)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The degree-`≤ d` slice of `V(R, L)` with its normal-form basis.
#[derive(Debug, Clone)]
pub struct TruncatedEnvelope {
    system: RewriteSystem,
    degree: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    confluence: VerdictReport,
    left_action: VerdictReport,
}

fn sorted_l_words(m: usize, len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for shorter in sorted_l_words(m, len - 1) {
        let start = match shorter.last() {
            Some(Letter::L(a)) => *a,
            _ => 0,
        };
        for b in start..m {
            let mut w = shorter.clone();
            w.push(Letter::L(b));
            out.push(w);
        }
    }
    out
}

impl TruncatedEnvelope {
    /// Basis: `1`, the non-unit R-letters, then nondecreasing L-words of
    /// length `1..=d` by length and lexicographically.
    pub fn new(system: RewriteSystem, degree: usize) -> Self {
        let n = system.data().r().dim();
        let m = system.data().l().dim();
        let mut basis: Vec<Word> = vec![vec![]];
        basis.extend((1..n).map(|i| vec![Letter::R(i)]));
        for len in 1..=degree {
            basis.extend(sorted_l_words(m, len));
        }
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let confluence = system.check_local_confluence();
        let left_action = system.check_left_action();
        TruncatedEnvelope {
            system,
            degree,
            basis,
            index,
            confluence,
            left_action,
        }
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &[Letter]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Number of basis words of each L-degree `0..=d`.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree + 1];
        for w in &self.basis {
            out[l_count(w)] += 1;
        }
        out
    }

    pub fn confluence(&self) -> &VerdictReport {
        &self.confluence
    }

    pub fn left_action_report(&self) -> &VerdictReport {
        &self.left_action
    }

    fn require_confluent(&self) -> Result<(), EnvelopingError> {
        if self.confluence.passed() {
            Ok(())
        } else {
            Err(EnvelopingError::NotConfluent(Box::new(self.confluence.clone())))
        }
    }

    pub fn basis_element(&self, i: usize) -> NCElement {
        NCElement::word(self.system.field().one(), self.basis[i].clone())
    }

    /// Coordinates of a normal-form element over the basis.
    pub fn coordinates(&self, e: &NCElement) -> Result<Vec<Scalar>, EnvelopingError> {
        let mut out = vec![self.system.field().zero(); self.dim()];
        for (w, c) in e.terms() {
            let i = self
                .index_of(w)
                .ok_or_else(|| EnvelopingError::NotInBasis(self.system.format_word(w)))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// `a·b` reduced to normal form; refuses when `deg a + deg b > d`.
    pub fn multiply(&self, a: &NCElement, b: &NCElement) -> Result<NCElement, EnvelopingError> {
        self.require_confluent()?;
        let needed = a.degree() + b.degree();
        if needed > self.degree {
            return Err(EnvelopingError::DegreeOverflow {
                needed,
                available: self.degree,
            });
        }
        let out = self.system.normal_form(&a.concat(b))?;
        self.coordinates(&out)?;
        Ok(out)
    }

    /// Action of `v` on `r` through the counit.
    pub fn left_action_on_r(&self, v: &NCElement, r: &AlgebraElement) -> Result<AlgebraElement, EnvelopingError> {
        if !self.left_action.passed() {
            return Err(EnvelopingError::LeftActionNotCertified(Box::new(self.left_action.clone())));
        }
        self.system.act_on_r(v, r)
    }

    /// Decides whether `t = g·z` for some `z` in the degree-`≤ d` slice.
    pub fn left_divide(&self, g: &NCElement, t: &NCElement) -> Result<Division, EnvelopingError> {
        self.require_confluent()?;
        let needed = g.degree() + self.degree;
        if needed > MAX_PRODUCT_DEGREE {
            return Err(EnvelopingError::DegreeOverflow {
                needed,
                available: MAX_PRODUCT_DEGREE,
            });
        }
        let field = self.system.field();
        let target = self.system.normal_form(t)?;
        let columns: Vec<NCElement> = (0..self.dim())
            .map(|j| self.system.normal_form(&g.concat(&self.basis_element(j))))
            .collect::<Result<_, _>>()?;
        let mut rows: Vec<Word> = columns
            .iter()
            .chain(std::iter::once(&target))
            .flat_map(|e| e.terms().map(|(w, _)| w.clone()))
            .collect();
        rows.sort_by(|a, b| l_count(a).cmp(&l_count(b)).then_with(|| a.cmp(b)));
        rows.dedup();
        let row_of: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();

        let mut system = LinearSystem::new(field, rows.len(), self.dim());
        for (j, col) in columns.iter().enumerate() {
            for (w, c) in col.terms() {
                system.insert(row_of[w], j, c.clone()).expect("one entry per word and column");
            }
        }
        for (w, c) in target.terms() {
            system.set_rhs(row_of[w], c.clone()).expect("row exists");
        }
        let outcome = system.solve();
        Ok(Division {
            rows,
            system,
            outcome,
            degree: self.degree,
        })
    }
}

/// A left-divisibility query `t = g·z` and its outcome.
#[derive(Debug, Clone)]
pub struct Division {
    /// Normal-form words labelling the rows of the linear system.
    pub rows: Vec<Word>,
    pub system: LinearSystem,
    pub outcome: SolveOutcome,
    pub degree: usize,
}

impl Division {
    pub fn is_feasible(&self) -> bool {
        self.outcome.is_feasible()
    }

    /// The particular quotient `z` when one exists.
    pub fn quotient(&self, env: &TruncatedEnvelope) -> Option<NCElement> {
        match &self.outcome {
            SolveOutcome::Feasible { witness, .. } => Some(NCElement::from_terms(
                witness.iter().zip(env.basis()).map(|(c, w)| (c.clone(), w.clone())),
            )),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn verify(&self) -> bool {
        self.outcome.verify(&self.system)
    }

    pub fn report(&self, env: &TruncatedEnvelope, g: &NCElement, t: &NCElement) -> VerdictReport {
        let sys = env.system();
        let desc = format!("{} = ({}) z", sys.format(t), sys.format(g));
        let (verdict, certificate) = match &self.outcome {
            SolveOutcome::Feasible { witness, .. } => (
                Verdict::Feasible,
                Certificate {
                    kind: CertificateKind::Solution,
                    system: desc.clone(),
                    entries: witness
                        .iter()
                        .zip(env.basis())
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, w)| (sys.format_word(w), c.to_string()))
                        .collect(),
                    verified: self.verify(),
                },
            ),
            SolveOutcome::Infeasible { certificate } => (
                Verdict::Infeasible,
                Certificate {
                    kind: CertificateKind::Farkas,
                    system: desc.clone(),
                    entries: certificate
                        .iter()
                        .zip(&self.rows)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, w)| (format!("coefficient of {}", sys.format_word(w)), c.to_string()))
                        .collect(),
                    verified: self.verify(),
                },
            ),
        };
        let mut rep = VerdictReport::new("left divisibility", verdict).with_degree(self.degree);
        rep.certificates.push(certificate);
        if let SolveOutcome::Feasible { nullity, .. } = &self.outcome {
            rep.push_step("solution space", Verdict::Feasible, format!("nullity {nullity}"));
        }
        rep
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::R(i) => write!(f, "e{i}"),
            Letter::L(a) => write!(f, "l{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{Character, CommAlgebra};
    use crate::lierinehart::{make_character_module, Anchor, LieAlgebra};

    const X: Letter = Letter::R(1);
    const Y: Letter = Letter::R(2);
    const A: Letter = Letter::L(0);

    fn square_zero_system(f: FieldSpec) -> RewriteSystem {
        let r = CommAlgebra::monomial_quotient(f, &["x", "y"], &["x*y", "x^2", "y^2"]).unwrap();
        let e = r.derivation_from_generators(&[r.basis_element(2), r.zero()]).unwrap().unwrap();
        let l = LieAlgebra::abelian(f, vec!["alpha".into()]).unwrap();
        let chi = Character::augmentation(&r);
        RewriteSystem::new(&make_character_module(r, l, Anchor::new(vec![e]), chi).unwrap()).unwrap()
    }

    fn classical(f: FieldSpec, labels: &[&str]) -> RewriteSystem {
        let r = CommAlgebra::ground(f);
        let l = LieAlgebra::abelian(f, labels.iter().map(|s| s.to_string()).collect()).unwrap();
        let rho = Anchor::zero(&r, &l);
        RewriteSystem::new(&make_character_module(r, l, rho, Character::new(vec![f.one()])).unwrap()).unwrap()
    }

    fn w(f: FieldSpec, letters: &[Letter]) -> NCElement {
        NCElement::word(f.one(), letters.to_vec())
    }

    #[test]
    fn square_zero_rules() {
        let f = FieldSpec::Rationals;
        let s = square_zero_system(f);
        assert_eq!(s.rule((A, X)).unwrap().rhs, w(f, &[X, A]).add(&w(f, &[Y])));
        assert!(s.rule((X, A)).unwrap().rhs.is_zero());
        assert_eq!(s.rule((A, X)).unwrap().family, RuleFamily::Straighten);
    }

    #[test]
    fn unvalidated_data_refused() {
        let f = FieldSpec::Rationals;
        let r = CommAlgebra::ground(f);
        let l = LieAlgebra::abelian(f, vec!["a".into()]).unwrap();
        let data = LieRinehartData::new(
            r.clone(),
            l.clone(),
            crate::lierinehart::ModuleAction::Character(Character::new(vec![f.one()])),
            Anchor::zero(&r, &l),
        )
        .unwrap();
        assert_eq!(RewriteSystem::new(&data).unwrap_err(), EnvelopingError::Unvalidated);
    }

    #[test]
    fn symmetric_algebra_rules_only_reorder() {
        let f = FieldSpec::Rationals;
        let s = classical(f, &["b1", "b2"]);
        let rules: Vec<_> = s.rules().collect();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].family, RuleFamily::Order);
        let nf = s.normal_form(&w(f, &[Letter::L(1), Letter::L(0)])).unwrap();
        assert_eq!(nf, w(f, &[Letter::L(0), Letter::L(1)]));
    }

    #[test]
    fn square_zero_normal_forms() {
        let f = FieldSpec::Rationals;
        let s = square_zero_system(f);
        assert_eq!(s.normal_form(&w(f, &[A, X])).unwrap(), w(f, &[Y]));
        assert!(s.normal_form(&w(f, &[Y, A])).unwrap().is_zero());
        assert!(s.normal_form(&w(f, &[A, X, X])).unwrap().is_zero());
        let yx = s.normal_form(&w(f, &[Y, X])).unwrap();
        assert!(yx.is_zero());
    }

    #[test]
    fn measure_counts_inversions() {
        assert_eq!(measure(&[A, X]), (1, 1, 1));
        assert_eq!(measure(&[X, A]), (1, 1, 0));
        assert_eq!(measure(&[Letter::L(1), Letter::L(0), X]), (2, 1, 3));
    }

    #[test]
    fn basis_enumeration() {
        let f = FieldSpec::Rationals;
        let env = TruncatedEnvelope::new(square_zero_system(f), 3);
        assert_eq!(env.dim(), 6);
        let shown: Vec<String> = env.basis().iter().map(|b| env.system().word_labels(b).join(" ")).collect();
        assert_eq!(shown, ["", "x", "y", "alpha", "alpha alpha", "alpha alpha alpha"]);
        assert!(env.basis().iter().all(|b| env.system().is_irreducible(b)));

        assert_eq!(TruncatedEnvelope::new(classical(f, &["a"]), 4).dim(), 5);
        let two = TruncatedEnvelope::new(classical(f, &["b1", "b2"]), 2);
        assert_eq!(two.dim(), 6);
        assert_eq!(two.dims_by_degree(), vec![1, 2, 3]);
    }

    #[test]
    fn truncated_multiplication() {
        let f = FieldSpec::Rationals;
        let env = TruncatedEnvelope::new(square_zero_system(f), 3);
        assert!(env.multiply(&w(f, &[X]), &w(f, &[A, A])).unwrap().is_zero());
        assert_eq!(env.multiply(&w(f, &[A]), &w(f, &[A])).unwrap(), w(f, &[A, A]));
        let b = w(f, &[A, A]).add(&w(f, &[Y]));
        assert_eq!(env.multiply(&NCElement::one(f), &b).unwrap(), b);
        assert!(matches!(
            env.multiply(&w(f, &[A, A]), &w(f, &[A, A])),
            Err(EnvelopingError::DegreeOverflow { needed: 4, available: 3 })
        ));
    }

    #[test]
    fn confluence_of_square_zero_and_classical() {
        let f = FieldSpec::Rationals;
        assert!(square_zero_system(f).check_local_confluence().passed());
        assert!(classical(f, &["b1", "b2"]).check_local_confluence().passed());
    }

    #[test]
    fn wrong_anchor_term_breaks_confluence() {
        let f = FieldSpec::Rationals;
        // ᾱ x → x ᾱ + 1 is not a derivation rule in characteristic 0 (x² = 0)
        let s = square_zero_system(f).with_rule((A, X), w(f, &[X, A]).add(&NCElement::one(f)));
        let rep = s.check_local_confluence();
        assert!(!rep.passed());
        let env = TruncatedEnvelope::new(s, 2);
        assert!(matches!(env.multiply(&w(f, &[A]), &w(f, &[A])), Err(EnvelopingError::NotConfluent(_))));
    }

    #[test]
    fn left_action() {
        let f = FieldSpec::Rationals;
        let env = TruncatedEnvelope::new(square_zero_system(f), 3);
        let r = env.system().data().r().clone();
        assert!(env.left_action_report().passed());
        assert_eq!(env.left_action_on_r(&w(f, &[A]), &r.basis_element(1)).unwrap(), r.basis_element(2));
        let v = r.element(vec![f.from_i64(2), f.from_i64(-1), f.from_i64(5)]).unwrap();
        assert_eq!(env.left_action_on_r(&NCElement::one(f), &v).unwrap(), v);
        let rel = w(f, &[A, X]).sub(&w(f, &[Y]));
        for i in 0..3 {
            assert!(env.left_action_on_r(&rel, &r.basis_element(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn divisibility_in_square_zero() {
        let f = FieldSpec::Rationals;
        let env = TruncatedEnvelope::new(square_zero_system(f), 4);
        let d = env.left_divide(&w(f, &[X]), &w(f, &[Y])).unwrap();
        assert!(!d.is_feasible() && d.verify());
        match &d.outcome {
            SolveOutcome::Infeasible { certificate } => {
                let y_row = d.rows.iter().position(|r| r == &vec![Y]).unwrap();
                for (i, c) in certificate.iter().enumerate() {
                    assert_eq!(c.is_zero(), i != y_row);
                }
            }
            _ => unreachable!(),
        }
        let d = env.left_divide(&w(f, &[A]), &w(f, &[Y])).unwrap();
        assert_eq!(d.quotient(&env).unwrap(), w(f, &[X]));
        let t = w(f, &[A, A]).sub(&w(f, &[Y]).scale(&f.from_i64(3)));
        let d = env.left_divide(&NCElement::one(f), &t).unwrap();
        assert_eq!(d.quotient(&env).unwrap(), t);
    }

    #[test]
    fn formatting_and_parsing() {
        let f = FieldSpec::Rationals;
        let s = square_zero_system(f);
        let e = s.parse_element("alpha x - 2*y + 1").unwrap();
        let bar: String = "alpha".chars().flat_map(|c| [c, '\u{0305}']).collect();
        assert_eq!(s.format(&e), format!("1 - 2*y + {bar} x"));
        assert_eq!(s.word_labels(&[A, X]), ["alpha", "x"]);
        assert!(s.parse_element("beta").is_err());
    }
}
