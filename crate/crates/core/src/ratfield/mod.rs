//! Exact multivariate rational functions over the rationals whose
//! denominators are products of affine-linear forms.
//!
//! Denominators are kept factored, so reduction is trial division by each
//! form and no general multivariate gcd is ever needed.

mod factor;
mod linform;
mod poly;
mod ratfunc;
mod vartable;

pub use factor::{factor_linear, rational_roots};
pub use linform::{var_plus, Affine, LinForm};
pub use poly::{MPoly, Mono};
pub use ratfunc::{render_affine, render_poly, RatFunc};
pub use vartable::{Slot, SlotKind, VarTable, SPECTRAL_SLOTS};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational numbers.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor numerator is not a product of linear forms")]
    NonLinearDenominator,
    #[error("two denominator roots coincide")]
    RepeatedPole,
    #[error("a denominator form vanishes under the substitution")]
    DenominatorVanishes,
}

/// Expression tree over rational functions.
#[derive(Clone, Debug)]
pub enum Expr {
    Leaf(RatFunc),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn leaf(f: RatFunc) -> Self {
        Expr::Leaf(f)
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

/// Evaluates an expression tree to a reduced canonical rational function.
pub fn rf_arith(e: &Expr) -> Result<RatFunc, RatError> {
    Ok(match e {
        Expr::Leaf(f) => f.clone(),
        Expr::Add(a, b) => rf_arith(a)?.add(&rf_arith(b)?),
        Expr::Sub(a, b) => rf_arith(a)?.sub(&rf_arith(b)?),
        Expr::Mul(a, b) => rf_arith(a)?.mul(&rf_arith(b)?),
        Expr::Div(a, b) => rf_arith(a)?.div(&rf_arith(b)?)?,
    })
}

/// `slot ↦ slot + c·ħ`.
pub fn rf_shift(f: &RatFunc, slot: usize, c: i64) -> RatFunc {
    f.shift(slot, VarTable::HBAR, &q(c))
}

/// Coefficient of `var^{-p}` in the expansion of `f` at `var = ∞`.
pub fn rf_coeff_at_infinity(f: &RatFunc, var: usize, p: usize) -> RatFunc {
    f.coeff_at_infinity(var, p)
}

/// `f` minus its polynomial part in `var`.
pub fn rf_principal_part(f: &RatFunc, var: usize) -> RatFunc {
    f.principal_part(var)
}
