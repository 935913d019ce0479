//! The localized ring of ħ-difference operators: finite sums of rational
//! coefficients times shift monomials, where a shift moving past a gauge
//! variable translates it by a multiple of `ħ`.
//!
//! Composition convention: `(f·u^m)(g·u^n) = f · g(w + mħ) · u^{m+n}`, so
//! `[u, w] = ħu`.

use crate::error::{CbxError, Result};
use crate::ratfield::{q, RatFunc, VarTable, Q};
use rayon::prelude::*;
use smallvec::SmallVec;
use std::collections::BTreeMap;

/// Integer exponent of the shift operator for every slot of the table
/// (nonzero only on gauge slots).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftMono(SmallVec<[i8; 16]>);

impl ShiftMono {
    pub fn identity(nvars: usize) -> Self {
        ShiftMono(SmallVec::from_elem(0, nvars))
    }

    /// `u_slot^e`.
    pub fn unit(nvars: usize, slot: usize, e: i8) -> Self {
        let mut m = Self::identity(nvars);
        m.0[slot] = e;
        m
    }

    pub fn from_exps(exps: &[i8]) -> Self {
        ShiftMono(exps.iter().copied().collect())
    }

    pub fn exps(&self) -> &[i8] {
        &self.0
    }

    pub fn exp(&self, slot: usize) -> i8 {
        self.0[slot]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &ShiftMono) -> ShiftMono {
        ShiftMono(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> ShiftMono {
        ShiftMono(self.0.iter().map(|a| -a).collect())
    }

    fn nonzero(&self) -> Vec<(usize, i64)> {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(s, &e)| (s, e as i64)).collect()
    }

    /// Applies the shift to a coefficient: `g ↦ g(w + mħ)`.
    pub fn act(&self, g: &RatFunc) -> RatFunc {
        g.shift_many(&self.nonzero(), VarTable::HBAR)
    }

    /// Renders as a product of `u[name]^e`.
    pub fn render(&self, vt: &VarTable) -> String {
        let parts: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|(s, e)| if e == 1 { format!("u[{}]", vt.name(s)) } else { format!("u[{}]^{}", vt.name(s), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A finite sum `Σ coeff · shift` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<ShiftMono, RatFunc>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(RatFunc::one(nvars))
    }

    pub fn scalar(f: RatFunc) -> Self {
        Self::term(ShiftMono::identity(f.nvars()), f)
    }

    pub fn term(m: ShiftMono, f: RatFunc) -> Self {
        let mut op = Self::zero(f.nvars());
        if !f.is_zero() {
            op.terms.insert(m, f);
        }
        op
    }

    /// `u_slot^e`.
    pub fn shift(nvars: usize, slot: usize, e: i8) -> Self {
        Self::term(ShiftMono::unit(nvars, slot, e), RatFunc::one(nvars))
    }

    /// Collects terms, summing coefficients of equal shifts in bulk.
    pub fn from_terms(nvars: usize, terms: Vec<(ShiftMono, RatFunc)>) -> Self {
        let mut groups: BTreeMap<ShiftMono, Vec<RatFunc>> = BTreeMap::new();
        for (m, f) in terms {
            if !f.is_zero() {
                groups.entry(m).or_default().push(f);
            }
        }
        let summed: Vec<(ShiftMono, RatFunc)> = groups
            .into_par_iter()
            .map(|(m, fs)| {
                let s = RatFunc::sum(nvars, fs.iter());
                (m, s)
            })
            .filter(|(_, f)| !f.is_zero())
            .collect();
        DiffOp { nvars, terms: summed.into_iter().collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShiftMono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ShiftMono) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let all: Vec<_> = self.terms.iter().chain(other.terms.iter()).map(|(m, f)| (m.clone(), f.clone())).collect();
        Self::from_terms(self.nvars, all)
    }

    pub fn neg(&self) -> DiffOp {
        self.map_coeffs(|f| f.neg())
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    /// Sum of many operators with one bulk reduction per shift.
    pub fn sum(nvars: usize, ops: &[DiffOp]) -> DiffOp {
        let all: Vec<_> = ops.iter().flat_map(|o| o.terms.iter().map(|(m, f)| (m.clone(), f.clone()))).collect();
        Self::from_terms(nvars, all)
    }

    /// Applies a coefficient-wise map that commutes with every shift.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc + Sync) -> DiffOp {
        let terms: Vec<_> = self.terms.par_iter().map(|(m, c)| (m.clone(), f(c))).collect();
        DiffOp { nvars: self.nvars, terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc> + Sync) -> Result<DiffOp> {
        let terms: Vec<_> = self
            .terms
            .par_iter()
            .map(|(m, c)| f(c).map(|g| (m.clone(), g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffOp { nvars: self.nvars, terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Left multiplication by a coefficient: `f · A`.
    pub fn lmul(&self, f: &RatFunc) -> DiffOp {
        self.map_coeffs(|c| f.mul(c))
    }

    pub fn scale(&self, c: &Q) -> DiffOp {
        self.map_coeffs(|f| f.scale_by(c))
    }

    /// Every product of a term of `self` with a term of `other`, negated on
    /// request.
    fn term_products(&self, other: &DiffOp, negate: bool) -> Vec<(ShiftMono, RatFunc)> {
        let pairs: Vec<(&ShiftMono, &RatFunc, &ShiftMono, &RatFunc)> = self
            .terms
            .iter()
            .flat_map(|(m, f)| other.terms.iter().map(move |(n, g)| (m, f, n, g)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(m, f, n, g)| {
                let c = f.mul(&m.act(g));
                (m.mul(n), if negate { c.neg() } else { c })
            })
            .collect()
    }

    pub fn mul(&self, other: &DiffOp) -> DiffOp {
        Self::from_terms(self.nvars, self.term_products(other, false))
    }

    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        let mut terms = self.term_products(other, false);
        terms.extend(other.term_products(self, true));
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes rational values for slots; the resulting coefficients are
    /// reduced.
    pub fn specialize(&self, assignments: &[(usize, Q)]) -> Result<DiffOp> {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, f)| Ok((m.clone(), f.specialize(assignments)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(self.nvars, terms))
    }

    /// Divides every coefficient by `ħ` exactly.
    pub fn div_hbar(&self) -> Result<DiffOp> {
        let mut terms = BTreeMap::new();
        for (m, f) in self.terms.iter() {
            let g = f.div_by_slot(VarTable::HBAR).ok_or(CbxError::NotDivisibleByHbar)?;
            terms.insert(m.clone(), g);
        }
        Ok(DiffOp { nvars: self.nvars, terms })
    }

    /// Common weighted degree of all terms, if there is one.
    pub fn homogeneity(&self, weights: &[i64], shift_weight: impl Fn(&ShiftMono) -> i64) -> Option<i64> {
        let mut deg = None;
        for (m, f) in self.terms.iter() {
            let d = f.homogeneous_degree(weights)? + shift_weight(m);
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Renames slots in coefficients and shifts alike.
    pub fn permute_slots(&self, map: &[usize]) -> DiffOp {
        let mut terms = BTreeMap::new();
        for (m, f) in self.terms.iter() {
            let mut e: SmallVec<[i8; 16]> = SmallVec::from_elem(0, self.nvars);
            for (s, &k) in m.0.iter().enumerate() {
                e[map[s]] = k;
            }
            terms.insert(ShiftMono(e), f.permute_slots(map));
        }
        DiffOp { nvars: self.nvars, terms }
    }

    /// One line per term: `coefficient · shift`.
    pub fn render(&self, vt: &VarTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, f)| format!("[{}] * {}", f.render(vt), m.render(vt)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `AB − BA`.
pub fn op_commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.commutator(b)
}

pub fn op_mul(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.mul(b)
}

/// `(1/ħ)(AB − BA)` at `ħ = 0`.
pub fn op_poisson_limit(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    a.commutator(b).div_hbar()?.specialize(&[(VarTable::HBAR, q(0))])
}

pub fn op_specialize(a: &DiffOp, assignments: &[(usize, Q)]) -> Result<DiffOp> {
    a.specialize(assignments)
}

/// Degree under `weights` with every shift of degree given by `shift_weight`.
pub fn op_homogeneity(a: &DiffOp, weights: &[i64], shift_weight: impl Fn(&ShiftMono) -> i64) -> Option<i64> {
    a.homogeneity(weights, shift_weight)
}

/// Weight vector giving degree 1 to `ħ`, `𝐭`, masses, gauge and spectral slots.
pub fn standard_weights(vt: &VarTable) -> Vec<i64> {
    (0..vt.len())
        .map(|s| match vt.slot(s).kind {
            crate::ratfield::SlotKind::Aux(_) => 0,
            _ => 1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::Affine;

    fn setup() -> (VarTable, usize, usize, usize) {
        let vt = VarTable::with_gauge("w", 2);
        let (w1, w2) = (vt.gauge()[0], vt.gauge()[1]);
        let n = vt.len();
        (vt, w1, w2, n)
    }

    #[test]
    fn shift_past_gauge_variable() {
        let (_, w1, _, n) = setup();
        let u1 = DiffOp::shift(n, w1, 1);
        let w = DiffOp::scalar(RatFunc::var(n, w1));
        let prod = u1.mul(&w);
        let expect = DiffOp::term(
            ShiftMono::unit(n, w1, 1),
            RatFunc::from_affine(n, &(Affine::var(w1) + Affine::var(0))),
        );
        assert_eq!(prod, expect);
        assert_eq!(u1.commutator(&w), DiffOp::term(ShiftMono::unit(n, w1, 1), RatFunc::var(n, 0)));
        assert_eq!(u1.mul(&DiffOp::shift(n, w1, -1)), DiffOp::one(n));
    }

    #[test]
    fn poisson_limits() {
        let (_, w1, w2, n) = setup();
        let u1 = DiffOp::shift(n, w1, 1);
        let w = DiffOp::scalar(RatFunc::var(n, w1));
        let w2op = DiffOp::scalar(RatFunc::var(n, w2));
        assert_eq!(op_poisson_limit(&w, &u1).unwrap(), u1.neg());
        assert!(op_poisson_limit(&w, &w2op).unwrap().is_zero());
        let wsq = DiffOp::scalar(RatFunc::var(n, w1).mul(&RatFunc::var(n, 0)).add(&RatFunc::var(n, w1)));
        assert_eq!(op_poisson_limit(&wsq, &u1).unwrap(), u1.neg());
    }

    #[test]
    fn not_divisible_by_hbar() {
        let (_, w1, _, n) = setup();
        let a = DiffOp::term(ShiftMono::unit(n, w1, 1), RatFunc::one(n));
        let b = DiffOp::scalar(RatFunc::var(n, w1));
        let c = a.commutator(&b).add(&DiffOp::scalar(RatFunc::one(n)));
        assert_eq!(c.div_hbar(), Err(CbxError::NotDivisibleByHbar));
    }

    #[test]
    fn homogeneity_of_quotient() {
        let (vt, w1, w2, n) = setup();
        let f = RatFunc::var(n, w1)
            .pow(2)
            .mul(&RatFunc::inv_affine(n, &(Affine::var(w1) - Affine::var(w2))).unwrap());
        let op = DiffOp::term(ShiftMono::unit(n, w1, 1), f);
        assert_eq!(op.homogeneity(&standard_weights(&vt), |_| 0), Some(1));
    }
}
