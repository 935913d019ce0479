//! Affine-linear forms: raw expressions and the canonical denominator factors.

use super::poly::MPoly;
use super::{q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// An affine-linear expression `Σ c_s·x_s + c` with arbitrary scaling.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Affine {
    pub coeffs: BTreeMap<usize, Q>,
    pub constant: Q,
}

impl Affine {
    pub fn var(slot: usize) -> Self {
        Self::term(slot, Q::one())
    }

    pub fn term(slot: usize, c: Q) -> Self {
        let mut a = Affine::default();
        if !c.is_zero() {
            a.coeffs.insert(slot, c);
        }
        a
    }

    pub fn constant(c: Q) -> Self {
        Affine { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn coeff(&self, slot: usize) -> Q {
        self.coeffs.get(&slot).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_mpoly(&self, nvars: usize) -> MPoly {
        let coeffs: Vec<_> = self.coeffs.iter().map(|(s, c)| (*s, c.clone())).collect();
        MPoly::linear(nvars, &coeffs, &self.constant)
    }

    fn add_coeff(&mut self, slot: usize, c: Q) {
        let e = self.coeffs.entry(slot).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&slot);
        }
    }

    /// Replaces `slot` by `value`.
    pub fn substitute(&self, slot: usize, value: &Affine) -> Affine {
        let a = self.coeff(slot);
        if a.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        r.coeffs.remove(&slot);
        r.add_scaled(value, &a);
        r
    }

    pub fn add_scaled(&mut self, other: &Affine, c: &Q) {
        for (s, k) in other.coeffs.iter() {
            self.add_coeff(*s, k * c);
        }
        self.constant += &other.constant * c;
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = self.constant.clone();
        for (s, c) in self.coeffs.iter() {
            acc += c * &point[*s];
        }
        acc
    }

    /// Splits into canonical scaling and form, or returns the constant.
    pub fn canonical(&self) -> Result<(Q, LinForm), Q> {
        let Some((_, lead)) = self.coeffs.iter().next() else {
            return Err(self.constant.clone());
        };
        let lead = lead.clone();
        let coeffs = self.coeffs.iter().map(|(s, c)| (*s, c / &lead)).collect();
        Ok((lead.clone(), LinForm { coeffs, constant: &self.constant / &lead }))
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(mut self, rhs: Affine) -> Affine {
        self.add_scaled(&rhs, &Q::one());
        self
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(mut self, rhs: Affine) -> Affine {
        self.add_scaled(&rhs, &-Q::one());
        self
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        let mut r = Affine::default();
        r.add_scaled(&self, &-Q::one());
        r
    }
}

impl Mul<Q> for Affine {
    type Output = Affine;
    fn mul(self, c: Q) -> Affine {
        let mut r = Affine::default();
        r.add_scaled(&self, &c);
        r
    }
}

impl Add<Q> for Affine {
    type Output = Affine;
    fn add(mut self, c: Q) -> Affine {
        self.constant += c;
        self
    }
}

/// A non-constant affine-linear form whose first nonzero coefficient in
/// slot order is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    coeffs: Vec<(usize, Q)>,
    constant: Q,
}

impl LinForm {
    /// Canonicalizes a form given as `(slot, coefficient)` pairs and a constant.
    pub fn from_parts(coeffs: &[(usize, Q)], constant: Q) -> Result<(Q, LinForm), Q> {
        let mut a = Affine::constant(constant);
        for (s, c) in coeffs {
            a.add_coeff(*s, c.clone());
        }
        a.canonical()
    }

    /// The form `x_a − x_b + c·ħ`-style difference of two slots plus a
    /// multiple of a third slot, canonicalized.
    pub fn diff(a: usize, b: usize, shift_slot: usize, c: Q) -> (Q, LinForm) {
        (Affine::var(a) - Affine::var(b) + Affine::term(shift_slot, c))
            .canonical()
            .expect("difference of distinct slots")
    }

    pub fn coeffs(&self) -> &[(usize, Q)] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    /// Slot of the unit leading coefficient.
    pub fn lead_slot(&self) -> usize {
        self.coeffs[0].0
    }

    pub fn coeff(&self, slot: usize) -> Q {
        self.coeffs
            .iter()
            .find(|(s, _)| *s == slot)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.coeffs.iter().any(|(s, _)| *s == slot)
    }

    pub fn to_affine(&self) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, c.clone())).collect(),
            constant: self.constant.clone(),
        }
    }

    pub fn to_mpoly(&self, nvars: usize) -> MPoly {
        MPoly::linear(nvars, &self.coeffs, &self.constant)
    }

    /// The form minus its leading variable, as a polynomial.
    pub fn rest_mpoly(&self, nvars: usize) -> MPoly {
        MPoly::linear(nvars, &self.coeffs[1..], &self.constant)
    }

    /// Integer-normalized copy and the factor it was multiplied by.
    pub fn integer_normalized(&self) -> (Q, Affine) {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for (_, c) in self.coeffs.iter() {
            l = l.lcm(c.denom());
        }
        l = l.lcm(self.constant.denom());
        let f = Q::from_integer(l);
        (f.clone(), self.to_affine() * f)
    }

    /// Root of the form in `slot`: the affine expression `ρ` with
    /// `form = a·(slot − ρ)`, together with `a`.
    pub fn root_in(&self, slot: usize) -> Option<(Q, Affine)> {
        let a = self.coeff(slot);
        if a.is_zero() {
            return None;
        }
        let mut rest = self.to_affine();
        rest.coeffs.remove(&slot);
        Some((a.clone(), rest * (-Q::one() / a)))
    }
}

/// Convenience: `x_slot + c`.
pub fn var_plus(slot: usize, c: i64) -> Affine {
    Affine::var(slot) + q(c)
}
