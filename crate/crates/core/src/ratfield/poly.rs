//! Sparse multivariate polynomials with exact rational coefficients.

use super::{q, Q};
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Dense exponent vector over the slots of a table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub(crate) SmallVec<[u8; 16]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, slot: usize, e: u8) -> Self {
        let mut m = Self::one(nvars);
        m.0[slot] = e;
        m
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub fn exp(&self, slot: usize) -> u8 {
        self.0[slot]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn with_exp(&self, slot: usize, e: u8) -> Mono {
        let mut m = self.clone();
        m.0[slot] = e;
        m
    }
}

impl Ord for Mono {
    /// Graded lexicographic order; earlier slots dominate.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over the rationals; terms are kept in graded-lex order and
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, slot: usize) -> Self {
        Self::monomial(nvars, Mono::var(nvars, slot, 1), Q::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(slot, coefficient)` pairs plus a constant.
    pub fn linear(nvars: usize, coeffs: &[(usize, Q)], constant: &Q) -> Self {
        let mut p = Self::constant(nvars, constant.clone());
        for (s, c) in coeffs {
            p.add_term(Mono::var(nvars, *s, 1), c.clone());
        }
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in small.terms.iter() {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (m, c) in other.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in other.terms.iter() {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut acc: std::collections::HashMap<Mono, Q> = std::collections::HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = Self::one(self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, slot: usize) -> u8 {
        self.terms.keys().map(|m| m.exp(slot)).max().unwrap_or(0)
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m.exp(slot) > 0)
    }

    /// Coefficients of powers of one slot: `self = Σ_k out[k]·x^k`.
    pub fn split_in(&self, slot: usize) -> Vec<MPoly> {
        let d = self.degree_in(slot) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (m, c) in self.terms.iter() {
            let k = m.exp(slot) as usize;
            out[k].terms.insert(m.with_exp(slot, 0), c.clone());
        }
        out
    }

    /// Inverse of [`split_in`](Self::split_in).
    pub fn join_in(nvars: usize, slot: usize, parts: &[MPoly]) -> MPoly {
        let mut r = Self::zero(nvars);
        for (k, p) in parts.iter().enumerate() {
            for (m, c) in p.terms.iter() {
                r.add_term(m.with_exp(slot, k as u8), c.clone());
            }
        }
        r
    }

    /// Substitutes `slot ↦ slot + c·other_slot` by binomial expansion.
    pub fn shift(&self, slot: usize, by_slot: usize, c: &Q) -> MPoly {
        if c.is_zero() || !self.contains(slot) {
            return self.clone();
        }
        let mut r = Self::zero(self.nvars);
        for (m, k) in self.terms.iter() {
            let e = m.exp(slot);
            let mut binom = Q::one();
            let mut cpow = Q::one();
            for j in 0..=e {
                let mut mm = m.with_exp(slot, e - j);
                mm.0[by_slot] = mm.0[by_slot].checked_add(j).expect("exponent overflow");
                r.add_term(mm, k * &binom * &cpow);
                binom = binom * q((e - j) as i64) / q(j as i64 + 1);
                cpow *= c;
            }
        }
        r
    }

    /// Substitutes `slot ↦ value` where `value` is any polynomial.
    pub fn compose(&self, slot: usize, value: &MPoly) -> MPoly {
        if !self.contains(slot) {
            return self.clone();
        }
        let parts = self.split_in(slot);
        let mut r = Self::zero(self.nvars);
        for p in parts.iter().rev() {
            r = r.mul(value);
            r.add_assign(p);
        }
        r
    }

    /// Substitutes a rational value for one slot.
    pub fn eval_slot(&self, slot: usize, v: &Q) -> MPoly {
        self.compose(slot, &Self::constant(self.nvars, v.clone()))
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (s, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[s].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, slot: usize) -> MPoly {
        let mut r = Self::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let e = m.exp(slot);
            if e > 0 {
                r.add_term(m.with_exp(slot, e - 1), c * q(e as i64));
            }
        }
        r
    }

    /// Exact division by `x + rest`, where `x` is `slot` and `rest` does not
    /// involve `slot`. Returns `None` if the division leaves a remainder.
    pub fn div_linear(&self, slot: usize, rest: &MPoly) -> Option<MPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let parts = self.split_in(slot);
        let d = parts.len() - 1;
        if d == 0 {
            return None;
        }
        let mut quot = vec![Self::zero(self.nvars); d];
        quot[d - 1] = parts[d].clone();
        for k in (1..d).rev() {
            quot[k - 1] = parts[k].sub(&rest.mul(&quot[k]));
        }
        let rem = parts[0].sub(&rest.mul(&quot[0]));
        rem.is_zero().then(|| Self::join_in(self.nvars, slot, &quot))
    }

    /// Weighted degree if every term has the same weighted degree.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: i64 = m.0.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Least common multiple of coefficient denominators divided by the gcd of
    /// coefficient numerators, signed so the leading coefficient becomes positive.
    pub fn integer_content(&self) -> Q {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        let mut content = Q::new(num, den);
        if let Some((_, lc)) = self.leading() {
            if lc.is_negative() {
                content = -content;
            }
        }
        content
    }

    /// Renames slots through `map` (old slot index → new slot index) into a
    /// polynomial over `nvars` slots.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut r = Self::zero(nvars);
        for (m, c) in self.terms.iter() {
            let mut mm = Mono::one(nvars);
            for (s, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mm.0[map[s]] += e;
                }
            }
            r.add_term(mm, c.clone());
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, s: usize) -> MPoly {
        MPoly::var(n, s)
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = x(3, 2).mul(&x(3, 2)).add(&x(3, 0));
        assert_eq!(p.leading().unwrap().0, &Mono::var(3, 2, 2));
    }

    #[test]
    fn shift_expands_binomially() {
        let p = x(2, 1).pow(3);
        let s = p.shift(1, 0, &q(-1));
        let expect = x(2, 1).sub(&x(2, 0)).pow(3);
        assert_eq!(s, expect);
        assert_eq!(s.shift(1, 0, &q(1)), p);
    }

    #[test]
    fn compose_matches_shift() {
        let p = x(3, 1).pow(2).mul(&x(3, 2)).add(&x(3, 1));
        let v = x(3, 1).add(&x(3, 0).scale(&q(2)));
        assert_eq!(p.compose(1, &v), p.shift(1, 0, &q(2)));
    }

    #[test]
    fn exact_linear_division() {
        let a = x(3, 1).sub(&x(3, 2));
        let b = x(3, 1).add(&x(3, 0)).add(&MPoly::one(3));
        let p = a.mul(&b).mul(&b);
        let rest = x(3, 0).add(&MPoly::one(3));
        let quot = p.div_linear(1, &rest).unwrap();
        assert_eq!(quot, a.mul(&b));
        assert!(a.div_linear(1, &rest).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let p = x(2, 0).pow(3).add(&x(2, 1));
        assert_eq!(p.derivative(0), x(2, 0).pow(2).scale(&q(3)));
        assert_eq!(p.eval(&[q(2), q(5)]), q(13));
    }
}
