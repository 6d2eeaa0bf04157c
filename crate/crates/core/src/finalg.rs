//! Finite-dimensional commutative algebras given by structure constants,
//! together with derivations, characters and multiplication operators.
//!
//! Basis index 0 is always the unit.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::report::{VerdictReport, Witness};
use crate::scalars::{format_combination, is_zero_vector, FieldSpec, Matrix, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable {0:?} has no pure-power relation; the quotient is infinite-dimensional")]
    InfiniteDimensional(String),
    #[error("unsupported relation {0:?}: only monomials like \"x*y\" or \"x^2\" are accepted")]
    UnsupportedRelation(String),
    #[error("the relations generate the unit ideal; the quotient is the zero ring")]
    ZeroRing,
    #[error("invalid variable name {0:?}")]
    BadVariable(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("structure constant index ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("structure constant ({0}, {1}, {2}) given twice")]
    DuplicateConstant(usize, usize, usize),
    #[error("algebra has no basis elements")]
    Empty,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An element of a [`CommAlgebra`], as its coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraElement(pub Vec<Scalar>);

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.0)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|a| a * c).collect())
    }
}

/// Monomial bookkeeping kept for algebras built by [`CommAlgebra::monomial_quotient`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub variables: Vec<String>,
    /// Exponent vector of each basis element.
    pub exponents: Vec<Vec<u32>>,
    /// The relation monomials as given.
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    /// `products[i][j]` holds the coordinates of `e_i·e_j`.
    products: Vec<Vec<Vec<Scalar>>>,
    monomials: Option<MonomialBasis>,
}

fn parse_monomial(text: &str, variables: &[String]) -> Result<Vec<u32>, AlgebraError> {
    let unsupported = || AlgebraError::UnsupportedRelation(text.to_string());
    let mut exps = vec![0u32; variables.len()];
    let t = text.trim();
    if t == "1" {
        return Ok(exps);
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| unsupported())?),
            None => (factor, 1),
        };
        if power == 0 {
            return Err(unsupported());
        }
        let v = variables.iter().position(|v| v == name).ok_or_else(unsupported)?;
        exps[v] += power;
    }
    Ok(exps)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monomial_label(variables: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = variables
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl CommAlgebra {
    /// Builds an algebra from sparse constants `(i, j, k, c)` meaning
    /// `e_i·e_j` has coefficient `c` at `e_k`. Nothing beyond index and field
    /// sanity is enforced; run [`check_algebra_axioms`] for the axioms.
    pub fn from_structure_constants(
        field: FieldSpec,
        labels: Vec<String>,
        constants: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let mut products = vec![vec![vec![field.zero(); n]; n]; n];
        let mut given = BTreeSet::new();
        for (i, j, k, c) in constants {
            if *i >= n || *j >= n || *k >= n {
                return Err(AlgebraError::IndexOutOfRange(*i, *j, *k));
            }
            if c.field() != field {
                return Err(ScalarError::FieldMismatch(field, c.field()).into());
            }
            if !given.insert((*i, *j, *k)) {
                return Err(AlgebraError::DuplicateConstant(*i, *j, *k));
            }
            products[*i][*j][*k] = c.clone();
        }
        Ok(CommAlgebra {
            field,
            labels,
            products,
            monomials: None,
        })
    }

    /// `K[variables] / ⟨relations⟩` for a monomial ideal with finite-dimensional
    /// quotient. The basis is the standard monomials, ordered by degree and
    /// then lexicographically (earlier variables first), with `1` first.
    pub fn monomial_quotient(
        field: FieldSpec,
        variables: &[&str],
        relations: &[&str],
    ) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = variables.iter().map(|v| v.trim().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgebraError::BadVariable(v.clone()));
            }
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateLabel(v.clone()));
            }
        }
        let rels = relations
            .iter()
            .map(|r| parse_monomial(r, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        if rels.iter().any(|r| r.iter().all(|&e| e == 0)) {
            return Err(AlgebraError::ZeroRing);
        }
        // Smallest pure power of each variable lying in the ideal.
        let mut bounds = Vec::with_capacity(vars.len());
        for (v, name) in vars.iter().enumerate() {
            let pure = rels
                .iter()
                .filter(|r| r.iter().enumerate().all(|(w, &e)| w == v || e == 0))
                .map(|r| r[v])
                .min();
            bounds.push(pure.ok_or_else(|| AlgebraError::InfiniteDimensional(name.clone()))?);
        }

        let mut standard: Vec<Vec<u32>> = vec![vec![]];
        for &b in &bounds {
            standard = standard
                .into_iter()
                .flat_map(|prefix| {
                    (0..b).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        standard.retain(|m| !rels.iter().any(|r| divides(r, m)));
        standard.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });

        let index: HashMap<&Vec<u32>, usize> = standard.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = standard.len();
        let mut products = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, a) in standard.iter().enumerate() {
            for (j, b) in standard.iter().enumerate() {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if rels.iter().any(|r| divides(r, &prod)) {
                    continue;
                }
                products[i][j][index[&prod]] = field.one();
            }
        }
        let labels = standard.iter().map(|m| monomial_label(&vars, m)).collect();
        Ok(CommAlgebra {
            field,
            labels,
            products,
            monomials: Some(MonomialBasis {
                variables: vars,
                exponents: standard,
                relations: relations.iter().map(|r| r.trim().to_string()).collect(),
            }),
        })
    }

    /// The one-dimensional algebra `K`.
    pub fn ground(field: FieldSpec) -> Self {
        CommAlgebra::from_structure_constants(field, vec!["1".into()], &[(0, 0, 0, field.one())])
            .expect("ground field is well formed")
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn monomials(&self) -> Option<&MonomialBasis> {
        self.monomials.as_ref()
    }

    /// Coordinates of `e_i·e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i][j]
    }

    /// Nonzero structure constants in index order.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.products[i][j][k];
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![self.field.zero(); self.dim()])
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.0[i] = self.field.one();
        e
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(0)
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> Result<AlgebraElement, AlgebraError> {
        self.check_element(&coeffs)?;
        Ok(AlgebraElement(coeffs))
    }

    fn check_element(&self, coeffs: &[Scalar]) -> Result<(), AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::Dimension {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != self.field) {
            return Err(ScalarError::FieldMismatch(self.field, c.field()).into());
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_element(&a.0)?;
        self.check_element(&b.0)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, ai) in a.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ai * bj;
                for (k, p) in self.products[i][j].iter().enumerate() {
                    if !p.is_zero() {
                        out[k] = &out[k] + &(&c * p);
                    }
                }
            }
        }
        AlgebraElement(out)
    }

    pub fn format(&self, a: &AlgebraElement) -> String {
        format_combination(a.0.iter().zip(self.labels.iter().map(String::as_str)))
    }

    /// For monomial quotients: the derivation determined by its values on the
    /// variables, extended to every standard monomial by the product rule.
    /// Returns `None` for algebras not built from monomials.
    pub fn derivation_from_generators(&self, images: &[AlgebraElement]) -> Option<Result<Derivation, AlgebraError>> {
        let mono = self.monomials.as_ref()?;
        if images.len() != mono.variables.len() {
            return Some(Err(AlgebraError::Dimension {
                expected: mono.variables.len(),
                got: images.len(),
            }));
        }
        if let Some(bad) = images.iter().find_map(|im| self.check_element(&im.0).err()) {
            return Some(Err(bad));
        }
        let index: HashMap<&Vec<u32>, usize> = mono.exponents.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let columns: Vec<Vec<Scalar>> = mono
            .exponents
            .iter()
            .map(|m| {
                let mut acc = self.zero();
                for (v, &e) in m.iter().enumerate().filter(|(_, &e)| e > 0) {
                    let mut rest = m.clone();
                    rest[v] -= 1;
                    // divisors of standard monomials are standard
                    let cofactor = self.basis_element(index[&rest]);
                    let term = self.mul(&cofactor, &images[v]).scale(&self.field.from_i64(e as i64));
                    acc = acc.add(&term);
                }
                acc.0
            })
            .collect();
        Some(Ok(Derivation::from_matrix(Matrix::from_columns(self.field, self.dim(), &columns))))
    }
}

/// A linear map `R → R`, column `i` holding the image of `e_i`. Whether it is
/// a derivation is decided by [`check_derivation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    pub fn from_matrix(matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "derivation matrix must be square");
        Derivation { matrix }
    }

    pub fn from_images(algebra: &CommAlgebra, images: &[AlgebraElement]) -> Result<Self, AlgebraError> {
        if images.len() != algebra.dim() {
            return Err(AlgebraError::Dimension {
                expected: algebra.dim(),
                got: images.len(),
            });
        }
        for im in images {
            algebra.check_element(&im.0)?;
        }
        let cols: Vec<Vec<Scalar>> = images.iter().map(|e| e.0.clone()).collect();
        Ok(Derivation::from_matrix(Matrix::from_columns(algebra.field(), algebra.dim(), &cols)))
    }

    pub fn zero(algebra: &CommAlgebra) -> Self {
        Derivation::from_matrix(Matrix::zeros(algebra.field(), algebra.dim(), algebra.dim()))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.matrix.mul_vec(&a.0))
    }

    /// Image of the basis element `e_i`.
    pub fn image(&self, i: usize) -> AlgebraElement {
        AlgebraElement(self.matrix.column(i))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        let cols: Vec<Vec<Scalar>> = (0..self.matrix.cols())
            .map(|i| self.matrix.column(i).iter().map(|v| v * c).collect())
            .collect();
        Derivation::from_matrix(Matrix::from_columns(self.matrix.field(), self.matrix.rows(), &cols))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let neg = other.scale(&-self.matrix.field().one());
        Derivation::from_matrix(self.matrix.sub(neg.matrix()))
    }
}

/// `[D1, D2] = D1·D2 − D2·D1`.
pub fn derivation_commutator(d1: &Derivation, d2: &Derivation) -> Derivation {
    Derivation::from_matrix(d1.matrix.mul(&d2.matrix).sub(&d2.matrix.mul(&d1.matrix)))
}

/// `χ: R → K` by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Self {
        Character { values }
    }

    /// The character vanishing on every non-unit basis element.
    pub fn augmentation(algebra: &CommAlgebra) -> Self {
        let mut values = vec![algebra.field().zero(); algebra.dim()];
        values[0] = algebra.field().one();
        Character { values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    pub fn eval(&self, a: &AlgebraElement) -> Scalar {
        let field = self.values[0].field();
        crate::scalars::dot(field, &self.values, &a.0)
    }
}

/// Left multiplication by `a`, column `i` holding `a·e_i`.
pub fn multiplication_operator(algebra: &CommAlgebra, a: &AlgebraElement) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..algebra.dim())
        .map(|i| algebra.mul(a, &algebra.basis_element(i)).0)
        .collect();
    Matrix::from_columns(algebra.field(), algebra.dim(), &cols)
}

/// Commutativity, then the unit law, then associativity, each over all basis
/// tuples in lexicographic order. The first violation is reported.
pub fn check_algebra_axioms(a: &CommAlgebra) -> VerdictReport {
    const CHECK: &str = "commutative algebra axioms";
    let n = a.dim();
    let l = |i: usize| a.label(i).to_string();
    let show = |v: &[Scalar]| a.format(&AlgebraElement(v.to_vec()));
    for i in 0..n {
        for j in i + 1..n {
            if a.product(i, j) != a.product(j, i) {
                return VerdictReport::fail(
                    CHECK,
                    Witness::new("commutativity", vec![l(i), l(j)], show(a.product(i, j)), show(a.product(j, i))),
                );
            }
        }
    }
    for i in 0..n {
        let e = a.basis_element(i);
        for (lhs, order) in [(a.product(0, i), vec![l(0), l(i)]), (a.product(i, 0), vec![l(i), l(0)])] {
            if lhs != e.coeffs() {
                return VerdictReport::fail(CHECK, Witness::new("unit law", order, show(lhs), a.format(&e)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ij = AlgebraElement(a.product(i, j).to_vec());
                let jk = AlgebraElement(a.product(j, k).to_vec());
                let left = a.mul(&ij, &a.basis_element(k));
                let right = a.mul(&a.basis_element(i), &jk);
                if left != right {
                    return VerdictReport::fail(
                        CHECK,
                        Witness::new("associativity", vec![l(i), l(j), l(k)], a.format(&left), a.format(&right)),
                    );
                }
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// `D(1) = 0`, then the Leibniz rule on every ordered basis pair.
pub fn check_derivation(a: &CommAlgebra, d: &Matrix) -> VerdictReport {
    const CHECK: &str = "derivation";
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return VerdictReport::fail(
            CHECK,
            Witness::new("shape", vec![], format!("{}x{}", d.rows(), d.cols()), format!("{n}x{n}")),
        );
    }
    let d = Derivation::from_matrix(d.clone());
    let d1 = d.image(0);
    if !d1.is_zero() {
        return VerdictReport::fail(CHECK, Witness::new("D(1) = 0", vec![a.label(0).into()], a.format(&d1), "0"));
    }
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_element(i), a.basis_element(j));
            let lhs = d.apply(&AlgebraElement(a.product(i, j).to_vec()));
            let rhs = a.mul(&d.image(i), &ej).add(&a.mul(&ei, &d.image(j)));
            if lhs != rhs {
                return VerdictReport::fail(
                    CHECK,
                    Witness::new(
                        "Leibniz rule",
                        vec![a.label(i).into(), a.label(j).into()],
                        a.format(&lhs),
                        a.format(&rhs),
                    ),
                );
            }
        }
    }
    VerdictReport::pass(CHECK)
}

/// `χ(1) = 1`, then multiplicativity on every ordered basis pair.
pub fn check_character(a: &CommAlgebra, chi: &[Scalar]) -> VerdictReport {
    const CHECK: &str = "character";
    let n = a.dim();
    if chi.len() != n {
        return VerdictReport::fail(CHECK, Witness::new("length", vec![], chi.len(), n));
    }
    if !chi[0].is_one() {
        return VerdictReport::fail(CHECK, Witness::new("χ(1) = 1", vec![a.label(0).into()], &chi[0], 1));
    }
    let field = a.field();
    for i in 0..n {
        for j in 0..n {
            let lhs = crate::scalars::dot(field, chi, a.product(i, j));
            let rhs = &chi[i] * &chi[j];
            if lhs != rhs {
                return VerdictReport::fail(
                    CHECK,
                    Witness::new("multiplicativity", vec![a.label(i).into(), a.label(j).into()], lhs, rhs),
                );
            }
        }
    }
    VerdictReport::pass(CHECK)
}
