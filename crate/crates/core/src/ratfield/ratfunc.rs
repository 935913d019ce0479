//! Rational functions whose denominators are products of affine-linear forms.

use super::factor::factor_linear;
use super::linform::{Affine, LinForm};
use super::poly::MPoly;
use super::vartable::VarTable;
use super::{q, Q, RatError};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write;
use std::hash::{Hash, Hasher};

/// `scale · num · ∏ lin^mult / ∏ den^mult` in reduced form.
///
/// The numerator is kept as a product of canonical linear forms times a
/// residual polynomial that is monic with respect to its graded-lex leading
/// term. Every form is canonically scaled and therefore monic, no form occurs
/// both upstairs and downstairs, and no denominator form divides the
/// residual. Expanding the linear factors into the residual gives a unique
/// representative, which is what equality and hashing compare.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    lin: BTreeMap<LinForm, u32>,
    den: BTreeMap<LinForm, u32>,
    scale: Q,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.scale != other.scale || self.den != other.den {
            return false;
        }
        if self.lin == other.lin {
            return self.num == other.num;
        }
        self.expanded_numerator() == other.expanded_numerator()
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.den.hash(state);
        self.scale.hash(state);
    }
}

fn merge_into(target: &mut BTreeMap<LinForm, u32>, source: &BTreeMap<LinForm, u32>) {
    for (f, m) in source.iter() {
        *target.entry(f.clone()).or_insert(0) += m;
    }
}

/// Canonicalizes every form of `forms` after applying `map`; constant images
/// are folded into the returned factor, which is zero if one of them is.
fn map_forms(forms: &BTreeMap<LinForm, u32>, map: impl Fn(&LinForm) -> Affine) -> (Q, BTreeMap<LinForm, u32>) {
    let mut factor = Q::one();
    let mut out = BTreeMap::new();
    for (f, m) in forms.iter() {
        match map(f).canonical() {
            Err(c) => factor *= num_traits::pow(c, *m as usize),
            Ok((s, g)) => {
                factor *= num_traits::pow(s, *m as usize);
                *out.entry(g).or_insert(0) += m;
            }
        }
    }
    (factor, out)
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: MPoly::zero(nvars), lin: BTreeMap::new(), den: BTreeMap::new(), scale: Q::one() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        RatFunc { num: MPoly::one(nvars), lin: BTreeMap::new(), den: BTreeMap::new(), scale: c }
    }

    pub fn var(nvars: usize, slot: usize) -> Self {
        Self::from_mpoly(MPoly::var(nvars, slot))
    }

    pub fn from_mpoly(p: MPoly) -> Self {
        Self::build(p, BTreeMap::new(), BTreeMap::new(), Q::one(), false)
    }

    pub fn from_affine(nvars: usize, a: &Affine) -> Self {
        Self::from_mpoly(a.to_mpoly(nvars))
    }

    /// `1 / a`.
    pub fn inv_affine(nvars: usize, a: &Affine) -> Result<Self, RatError> {
        Self::quotient(MPoly::one(nvars), std::slice::from_ref(a))
    }

    /// `num / ∏ affine` with the product given factor by factor.
    pub fn quotient(num: MPoly, dens: &[Affine]) -> Result<Self, RatError> {
        Self::factored(num, &[], dens)
    }

    /// `num · ∏ nums / ∏ dens`, keeping the linear factors unexpanded.
    pub fn factored(num: MPoly, nums: &[Affine], dens: &[Affine]) -> Result<Self, RatError> {
        let nvars = num.nvars();
        let collect = |forms: &[Affine]| -> Result<(Q, BTreeMap<LinForm, u32>), Q> {
            let mut scale = Q::one();
            let mut out = BTreeMap::new();
            for a in forms {
                match a.canonical() {
                    Err(c) if c.is_zero() => return Err(c),
                    Err(c) => scale *= c,
                    Ok((s, f)) => {
                        scale *= s;
                        *out.entry(f).or_insert(0) += 1;
                    }
                }
            }
            Ok((scale, out))
        };
        let (dscale, den) = collect(dens).map_err(|_| RatError::DivisionByZero)?;
        let Ok((nscale, lin)) = collect(nums) else {
            return Ok(Self::zero(nvars));
        };
        Ok(Self::build(num, lin, den, nscale / dscale, true))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// The numerator without the scale, fully expanded.
    pub fn numerator(&self) -> MPoly {
        self.expanded_numerator()
    }

    pub fn denominator(&self) -> &BTreeMap<LinForm, u32> {
        &self.den
    }

    pub fn scale(&self) -> &Q {
        &self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        if !self.den.is_empty() || !self.lin.is_empty() {
            return None;
        }
        self.num.as_constant().map(|c| c * &self.scale)
    }

    /// Numerator with the scale folded in.
    pub fn scaled_numerator(&self) -> MPoly {
        self.expanded_numerator().scale(&self.scale)
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.num.contains(slot) || self.lin.keys().any(|f| f.contains(slot)) || self.den.keys().any(|f| f.contains(slot))
    }

    fn expanded_numerator(&self) -> MPoly {
        let nvars = self.nvars();
        let mut num = self.num.clone();
        for (f, m) in self.lin.iter() {
            num = num.mul(&f.to_mpoly(nvars).pow(*m));
        }
        num
    }

    /// The same function with every linear numerator factor expanded.
    fn flattened(&self) -> RatFunc {
        if self.lin.is_empty() {
            return self.clone();
        }
        RatFunc { num: self.expanded_numerator(), lin: BTreeMap::new(), den: self.den.clone(), scale: self.scale.clone() }
    }

    /// Canonicalizes `scale·num·∏lin/∏den`; when `reduce` is set every
    /// denominator form is trial-divided out of the residual as often as
    /// possible.
    fn build(mut num: MPoly, mut lin: BTreeMap<LinForm, u32>, mut den: BTreeMap<LinForm, u32>, mut scale: Q, reduce: bool) -> Self {
        let nvars = num.nvars();
        if num.is_zero() || scale.is_zero() {
            return Self::zero(nvars);
        }
        if num.total_degree() == Some(1) {
            let (s, f) = find_linear(&num).canonical().expect("degree one");
            scale *= s;
            *lin.entry(f).or_insert(0) += 1;
            num = MPoly::one(nvars);
        }
        for (f, m) in lin.iter_mut() {
            if let Some(d) = den.get_mut(f) {
                let k = (*m).min(*d);
                *m -= k;
                *d -= k;
            }
        }
        lin.retain(|_, m| *m > 0);
        den.retain(|_, m| *m > 0);
        if reduce && num.total_degree().unwrap_or(0) > 0 {
            let forms: Vec<LinForm> = den.keys().cloned().collect();
            for f in forms {
                let rest = f.rest_mpoly(nvars);
                let lead = f.lead_slot();
                loop {
                    let m = den.get_mut(&f).unwrap();
                    if *m == 0 {
                        break;
                    }
                    match num.div_linear(lead, &rest) {
                        Some(qt) => {
                            num = qt;
                            *m -= 1;
                        }
                        None => break,
                    }
                }
            }
            den.retain(|_, m| *m > 0);
        }
        let lc = num.leading().unwrap().1.clone();
        if !lc.is_one() {
            num = num.scale(&(Q::one() / &lc));
            scale *= lc;
        }
        RatFunc { num, lin, den, scale }
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.scale = -r.scale;
        r
    }

    pub fn scale_by(&self, c: &Q) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut r = self.clone();
        r.scale *= c;
        r
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let num = self.num.mul(&other.num);
        let mut lin = self.lin.clone();
        merge_into(&mut lin, &other.lin);
        let mut den = self.den.clone();
        merge_into(&mut den, &other.den);
        let reduce = (!self.den.is_empty() && other.num.as_constant().is_none())
            || (!other.den.is_empty() && self.num.as_constant().is_none());
        Self::build(num, lin, den, &self.scale * &other.scale, reduce)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        Self::sum(self.nvars(), [self, other])
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Sum of many rational functions over one common denominator; linear
    /// numerator factors shared by all summands stay factored.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatFunc>>(nvars: usize, items: I) -> RatFunc {
        let items: Vec<&RatFunc> = items.into_iter().filter(|f| !f.is_zero()).collect();
        match items.len() {
            0 => return RatFunc::zero(nvars),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut common = items[0].lin.clone();
        for f in items[1..].iter() {
            common.retain(|form, m| match f.lin.get(form) {
                Some(k) => {
                    *m = (*m).min(*k);
                    true
                }
                None => false,
            });
        }
        let mut lcm: BTreeMap<LinForm, u32> = BTreeMap::new();
        for f in items.iter() {
            for (form, m) in f.den.iter() {
                let e = lcm.entry(form.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut form_cache: BTreeMap<(&LinForm, u32), MPoly> = BTreeMap::new();
        let mut num = MPoly::zero(nvars);
        for f in items.iter() {
            let mut term = f.num.scale(&f.scale);
            let extra_num = f.lin.iter().map(|(form, m)| (form, m - common.get(form).copied().unwrap_or(0)));
            let extra_den = lcm.iter().map(|(form, m)| (form, m - f.den.get(form).copied().unwrap_or(0)));
            for (form, k) in extra_num.chain(extra_den) {
                if k > 0 {
                    let p = form_cache.entry((form, k)).or_insert_with(|| form.to_mpoly(nvars).pow(k));
                    term = term.mul(p);
                }
            }
            num.add_assign(&term);
        }
        Self::build(num, common, lcm, Q::one(), true)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut r = Self::one(self.nvars());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Multiplicative inverse; the numerator must factor into linear forms.
    pub fn inv(&self) -> Result<RatFunc, RatError> {
        if self.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        let nvars = self.nvars();
        let (c, forms) = factor_linear(&self.num).ok_or(RatError::NonLinearDenominator)?;
        let mut den = self.lin.clone();
        for f in forms {
            *den.entry(f).or_insert(0) += 1;
        }
        Ok(Self::build(MPoly::one(nvars), self.den.clone(), den, Q::one() / (c * &self.scale), false))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, RatError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact division by the form `slot` itself (for example `ħ`); `None`
    /// if the numerator is not divisible.
    pub fn div_by_slot(&self, slot: usize) -> Option<RatFunc> {
        let f = self.flattened();
        let zero = MPoly::zero(f.nvars());
        let num = f.num.div_linear(slot, &zero)?;
        Some(Self::build(num, BTreeMap::new(), f.den, f.scale, false))
    }

    /// Substitutes `slot ↦ slot + c·by` (an invertible change of variables).
    pub fn shift(&self, slot: usize, by: usize, c: &Q) -> RatFunc {
        if c.is_zero() || !self.contains(slot) {
            return self.clone();
        }
        let value = Affine::var(slot) + Affine::term(by, c.clone());
        let num = self.num.shift(slot, by, c);
        let map = |f: &LinForm| f.to_affine().substitute(slot, &value);
        let (nf, lin) = map_forms(&self.lin, map);
        let (df, den) = map_forms(&self.den, map);
        Self::build(num, lin, den, &self.scale * nf / df, false)
    }

    /// Shifts several slots at once by multiples of `by`.
    pub fn shift_many(&self, shifts: &[(usize, i64)], by: usize) -> RatFunc {
        let mut r = self.clone();
        for (s, c) in shifts {
            if *c != 0 {
                r = r.shift(*s, by, &q(*c));
            }
        }
        r
    }

    /// Substitutes `slot ↦ value` for an arbitrary affine expression.
    pub fn substitute(&self, slot: usize, value: &Affine) -> Result<RatFunc, RatError> {
        if !self.contains(slot) {
            return Ok(self.clone());
        }
        let nvars = self.nvars();
        let map = |f: &LinForm| f.to_affine().substitute(slot, value);
        let (df, den) = map_forms(&self.den, map);
        if df.is_zero() {
            return Err(RatError::DenominatorVanishes);
        }
        let (nf, lin) = map_forms(&self.lin, map);
        let num = self.num.compose(slot, &value.to_mpoly(nvars));
        Ok(Self::build(num, lin, den, &self.scale * nf / df, true))
    }

    /// Substitutes rational values for several slots.
    pub fn specialize(&self, assignments: &[(usize, Q)]) -> Result<RatFunc, RatError> {
        let mut r = self.clone();
        for (s, v) in assignments {
            r = r.substitute(*s, &Affine::constant(v.clone()))?;
        }
        Ok(r)
    }

    /// Applies a renaming of slots (a bijection on the used slots).
    pub fn permute_slots(&self, map: &[usize]) -> RatFunc {
        let nvars = self.nvars();
        let num = self.num.remap(nvars, map);
        let rename = |f: &LinForm| {
            f.coeffs().iter().fold(Affine::constant(f.constant().clone()), |acc, (s, c)| acc + Affine::term(map[*s], c.clone()))
        };
        let (nf, lin) = map_forms(&self.lin, rename);
        let (df, den) = map_forms(&self.den, rename);
        Self::build(num, lin, den, &self.scale * nf / df, false)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q, RatError> {
        let mut d = Q::one();
        for (f, m) in self.den.iter() {
            let v = f.to_affine().eval(point);
            if v.is_zero() {
                return Err(RatError::DenominatorVanishes);
            }
            d *= num_traits::pow(v, *m as usize);
        }
        let mut n = self.num.eval(point) * &self.scale;
        for (f, m) in self.lin.iter() {
            n *= num_traits::pow(f.to_affine().eval(point), *m as usize);
        }
        Ok(n / d)
    }

    /// Weighted degree (numerator minus denominator) if homogeneous.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let nvars = self.nvars();
        let form_degree = |f: &LinForm| -> Option<i64> {
            if !f.constant().is_zero() && weights.iter().any(|w| *w != 0) {
                return None;
            }
            f.to_mpoly(nvars).homogeneous_degree(weights)
        };
        let mut d = self.num.homogeneous_degree(weights)?;
        for (f, m) in self.lin.iter() {
            d += form_degree(f)? * *m as i64;
        }
        for (f, m) in self.den.iter() {
            d -= form_degree(f)? * *m as i64;
        }
        Some(d)
    }

    /// Splits the denominator into the product of forms containing `var`
    /// (expanded) and the remaining `var`-free rational factor.
    fn split_var(&self, var: usize) -> (MPoly, RatFunc) {
        let nvars = self.nvars();
        let mut dvar = MPoly::one(nvars);
        let mut rest = BTreeMap::new();
        for (f, m) in self.den.iter() {
            if f.contains(var) {
                dvar = dvar.mul(&f.to_mpoly(nvars).pow(*m));
            } else {
                rest.insert(f.clone(), *m);
            }
        }
        let outer = RatFunc { num: MPoly::one(nvars), lin: BTreeMap::new(), den: rest, scale: self.scale.clone() };
        (dvar, outer)
    }

    /// Polynomial part, principal part and the first `pmax` coefficients of
    /// `var^{-p}` of the expansion at `var = ∞`.
    pub fn expand_at_infinity(&self, var: usize, pmax: usize) -> (RatFunc, RatFunc, Vec<RatFunc>) {
        let nvars = self.nvars();
        if self.is_zero() {
            return (Self::zero(nvars), Self::zero(nvars), vec![Self::zero(nvars); pmax]);
        }
        let this = self.flattened();
        let (dvar, outer) = this.split_var(var);
        let delta = dvar.split_in(var);
        let d = delta.len() - 1;
        let lead = delta[d].as_constant().expect("linear forms have constant leading coefficient");
        let mut rem = this.num.split_in(var);
        let n_len = rem.len();
        let mut quot = vec![MPoly::zero(nvars); n_len.saturating_sub(d)];
        for k in (d..n_len).rev() {
            let c = rem[k].scale(&(Q::one() / &lead));
            if c.is_zero() {
                continue;
            }
            for (j, dj) in delta.iter().enumerate() {
                let t = c.mul(dj);
                rem[k - d + j] = rem[k - d + j].sub(&t);
            }
            quot[k - d] = c;
        }
        rem.resize(d, MPoly::zero(nvars));
        let poly = MPoly::join_in(nvars, var, &quot);
        let polypart = RatFunc::from_mpoly(poly).mul(&outer);
        let remainder = MPoly::join_in(nvars, var, &rem);
        let principal = Self::build(remainder, BTreeMap::new(), this.den.clone(), this.scale.clone(), true);
        let mut b: Vec<MPoly> = Vec::with_capacity(pmax);
        for k in 1..=pmax {
            let mut acc = if k <= d { rem[d - k].clone() } else { MPoly::zero(nvars) };
            for p in 1..k {
                if d + p >= k {
                    acc = acc.sub(&delta[d + p - k].mul(&b[p - 1]));
                }
            }
            b.push(acc.scale(&(Q::one() / &lead)));
        }
        let coeffs = b.into_iter().map(|p| RatFunc::from_mpoly(p).mul(&outer)).collect();
        (polypart, principal, coeffs)
    }

    /// Coefficient of `var^{-p}` in the expansion at infinity.
    pub fn coeff_at_infinity(&self, var: usize, p: usize) -> RatFunc {
        assert!(p >= 1, "coefficient index must be positive");
        self.expand_at_infinity(var, p).2.pop().unwrap()
    }

    /// `self` minus its polynomial part in `var`.
    pub fn principal_part(&self, var: usize) -> RatFunc {
        self.expand_at_infinity(var, 0).1
    }

    pub fn polynomial_part(&self, var: usize) -> RatFunc {
        self.expand_at_infinity(var, 0).0
    }

    /// Simple-pole residues in `var`: pairs `(root ρ_k, residue R_k)` with
    /// principal part `Σ R_k / (var − ρ_k)`.
    pub fn residues(&self, var: usize) -> Result<Vec<(Affine, RatFunc)>, RatError> {
        let poles: Vec<(&LinForm, u32)> = self.den.iter().filter(|(f, _)| f.contains(var)).map(|(f, m)| (f, *m)).collect();
        let mut out = Vec::new();
        for (f, m) in poles.iter() {
            if *m > 1 {
                return Err(RatError::RepeatedPole);
            }
            let (a, rho) = f.root_in(var).unwrap();
            let mut den = self.den.clone();
            den.remove(*f);
            let rest = Self::build(self.num.clone(), self.lin.clone(), den, &self.scale / &a, false);
            let res = rest.substitute(var, &rho)?;
            out.push((rho, res));
        }
        Ok(out)
    }

    /// Canonical text: integer-normalized numerator and forms with one
    /// rational prefactor.
    pub fn render(&self, vt: &VarTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if !self.lin.is_empty() {
            return self.flattened().render(vt);
        }
        let content = self.num.integer_content();
        let prim = self.num.scale(&(Q::one() / &content));
        let mut factor = &self.scale * &content;
        let mut den_parts = Vec::new();
        for (f, m) in self.den.iter() {
            let (g, a) = f.integer_normalized();
            factor *= num_traits::pow(g, *m as usize);
            let text = render_affine(&a, vt);
            den_parts.push(if *m > 1 { format!("({text})^{m}") } else { format!("({text})") });
        }
        let mut s = String::new();
        let num_text = render_poly(&prim, vt);
        let num_is_one = prim.as_constant().map(|c| c.is_one()).unwrap_or(false);
        if num_is_one {
            s.push_str(&render_q(&factor));
        } else if factor.is_one() {
            write!(s, "({num_text})").unwrap();
        } else if factor == -Q::one() {
            write!(s, "-({num_text})").unwrap();
        } else {
            write!(s, "{}*({num_text})", render_q(&factor)).unwrap();
        }
        if !den_parts.is_empty() {
            write!(s, "/({})", den_parts.join("*")).unwrap();
        }
        s
    }
}

fn find_linear(p: &MPoly) -> Affine {
    let mut a = Affine::default();
    for (m, c) in p.terms() {
        match m.exps().iter().position(|&e| e == 1) {
            Some(s) => a = a + Affine::term(s, c.clone()),
            None => a = a + c.clone(),
        }
    }
    a
}

pub(crate) fn render_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_monomial(m: &super::poly::Mono, vt: &VarTable) -> String {
    let mut parts = Vec::new();
    for (s, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vt.name(s).to_string()),
            _ => parts.push(format!("{}^{}", vt.name(s), e)),
        }
    }
    parts.join("*")
}

/// Terms in descending graded-lex order.
pub fn render_poly(p: &MPoly, vt: &VarTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(m, vt);
        if mono.is_empty() {
            s.push_str(&render_q(&a));
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            write!(s, "{}*{}", render_q(&a), mono).unwrap();
        }
    }
    s
}

pub fn render_affine(a: &Affine, vt: &VarTable) -> String {
    render_poly(&a.to_mpoly(vt.len()), vt)
}
