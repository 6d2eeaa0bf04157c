//! Built-in example inputs.

use crate::finalg::{Character, CommAlgebra};
use crate::lierinehart::{make_character_module, Anchor, LieAlgebra, LieRinehartData};
use crate::scalars::FieldSpec;

/// Problem file for the character-module example on `K[x,y]/⟨xy, x², y²⟩`.
pub const SQUARE_ZERO: &str = include_str!("../presets/square-zero.toml");
/// Problem file for the Euler derivation on the dual numbers.
pub const EULER_DUAL: &str = include_str!("../presets/euler-dual.toml");

pub fn named(name: &str) -> Option<&'static str> {
    match name {
        "square-zero" => Some(SQUARE_ZERO),
        "euler-dual" => Some(EULER_DUAL),
        _ => None,
    }
}

pub const NAMES: &[&str] = &["square-zero", "euler-dual"];

/// `R = K[x,y]/⟨xy, x², y²⟩`, `L = K·α`, `ρ(α) = E` with `E(x) = y`,
/// `E(y) = 0`, and `χ(x) = χ(y) = 0`.
pub fn square_zero_inputs(field: FieldSpec) -> (CommAlgebra, LieAlgebra, Anchor, Character) {
    let r = CommAlgebra::monomial_quotient(field, &["x", "y"], &["x*y", "x^2", "y^2"]).expect("finite quotient");
    let e = r
        .derivation_from_generators(&[r.basis_element(2), r.zero()])
        .expect("monomial algebra")
        .expect("images have the right size");
    let l = LieAlgebra::abelian(field, vec!["alpha".into()]).expect("one label");
    let chi = Character::augmentation(&r);
    (r, l, Anchor::new(vec![e]), chi)
}

pub fn square_zero_data(field: FieldSpec) -> LieRinehartData {
    let (r, l, rho, chi) = square_zero_inputs(field);
    make_character_module(r, l, rho, chi).expect("the square-zero example is Lie-Rinehart")
}

/// `R = K[x]/⟨x²⟩`, `ρ(α) = x·d/dx`, `χ(x) = 0`.
pub fn euler_dual_data(field: FieldSpec) -> LieRinehartData {
    let r = CommAlgebra::monomial_quotient(field, &["x"], &["x^2"]).expect("finite quotient");
    let d = r
        .derivation_from_generators(&[r.basis_element(1)])
        .expect("monomial algebra")
        .expect("one image");
    let l = LieAlgebra::abelian(field, vec!["alpha".into()]).expect("one label");
    let chi = Character::augmentation(&r);
    make_character_module(r, l, Anchor::new(vec![d]), chi).expect("Euler example is Lie-Rinehart")
}

/// `R = K` with zero anchor: the classical enveloping algebra `U(L)`.
pub fn classical_data(l: LieAlgebra) -> LieRinehartData {
    let field = l.field();
    let r = CommAlgebra::ground(field);
    let rho = Anchor::zero(&r, &l);
    make_character_module(r, l, rho, Character::new(vec![field.one()])).expect("U(L) data is Lie-Rinehart")
}

/// Two-dimensional nonabelian Lie algebra `[h, e] = e`.
pub fn affine_line_lie(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(
        field,
        vec!["h".into(), "e".into()],
        &[(0, 1, 1, field.one()), (1, 0, 1, -field.one())],
    )
    .expect("well-formed brackets")
}
