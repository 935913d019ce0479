//! Monopole operators as ħ-difference operators: quiver minuscule
//! operators, the Jordan-quiver Macdonald-type operators, general minuscule
//! operators for a root datum and the quasi-minuscule operator.

use crate::error::{CbxError, Result};
use crate::quiverdata::{IMat, QuiverTheory, RootDatum};
use crate::ratfield::{q, qf, Affine, MPoly, Mono, RatFunc, VarTable, Q};
use crate::shiftalg::{DiffOp, ShiftMono};
use num_traits::One;
use rayon::prelude::*;

/// A symmetric function written as a polynomial in elementary symmetric
/// generators `e1, e2, …` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    poly: MPoly,
}

impl SymFunc {
    pub fn one() -> Self {
        SymFunc { poly: MPoly::one(0) }
    }

    /// `e_k`.
    pub fn elementary(k: usize) -> Self {
        assert!(k >= 1, "elementary symmetric functions start at e1");
        SymFunc { poly: MPoly::var(k, k - 1) }
    }

    /// Parses text such as `e1^2 - 2*e2 + 1/3 e3`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = SymParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let poly = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(SymFunc { poly })
    }

    pub fn is_one(&self) -> bool {
        self.poly.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Number of generators the polynomial may involve.
    pub fn arity(&self) -> usize {
        self.poly.nvars()
    }

    /// Substitutes `values` for the symmetric variables.
    pub fn eval(&self, values: &[MPoly], nvars: usize) -> MPoly {
        let m = self.poly.nvars();
        let mut e = vec![MPoly::zero(nvars); m + 1];
        e[0] = MPoly::one(nvars);
        for (count, v) in values.iter().enumerate() {
            for k in (1..=m.min(count + 1)).rev() {
                let t = e[k - 1].mul(v);
                e[k].add_assign(&t);
            }
        }
        let mut out = MPoly::zero(nvars);
        for (mono, c) in self.poly.terms() {
            let mut t = MPoly::constant(nvars, c.clone());
            for (k, &x) in mono.exps().iter().enumerate() {
                if x > 0 {
                    t = t.mul(&e[k + 1].pow(x as u32));
                }
            }
            out.add_assign(&t);
        }
        out
    }
}

struct SymParser {
    chars: Vec<char>,
    pos: usize,
}

impl SymParser {
    fn error(&self, msg: &str) -> CbxError {
        CbxError::schema(Some(format!("symmetric function, character {}", self.pos + 1)), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected an integer"))
    }

    fn widen(p: MPoly, n: usize) -> MPoly {
        if p.nvars() >= n {
            return p;
        }
        let map: Vec<usize> = (0..p.nvars()).collect();
        p.remap(n, &map)
    }

    fn combine(a: MPoly, b: MPoly) -> (MPoly, MPoly) {
        let n = a.nvars().max(b.nvars());
        (Self::widen(a, n), Self::widen(b, n))
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c) = self.peek().filter(|c| *c == '+' || *c == '-') {
            self.pos += 1;
            let t = self.term()?;
            let (a, t) = Self::combine(acc, t);
            acc = if c == '+' { a.add(&t) } else { a.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c == 'e' || c == '(' || c.is_ascii_digit() => {}
                _ => break,
            }
            let f = self.factor()?;
            let (a, f) = Self::combine(acc, f);
            acc = a.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some('e') => {
                self.pos += 1;
                let k = self.integer()? as usize;
                if k == 0 {
                    return Err(self.error("generators are e1, e2, ..."));
                }
                MPoly::var(k, k - 1)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut v = q(n as i64);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    v /= q(d as i64);
                }
                MPoly::constant(0, v)
            }
            _ => return Err(self.error("expected a generator, number or '('")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }
}

/// All `n`-element subsets of `0..a` in lexicographic order.
pub fn subsets(a: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, a: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..a {
            if a - x < n - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, a, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, a, n, &mut Vec::new(), &mut out);
    out
}

/// Whether the dilatation of `𝐍` contributes `𝐭` to every numerator factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dilation {
    Off,
    On,
}

fn check_index(q: &QuiverTheory, i: usize, n: usize) -> Result<()> {
    if i >= q.n_vertices() {
        return Err(CbxError::IndexOutOfRange(format!("vertex {i} (theory has {} vertices)", q.n_vertices())));
    }
    if n == 0 || n > q.dim[i] {
        return Err(CbxError::IndexOutOfRange(format!("n = {n} must lie in 1..={}", q.dim[i])));
    }
    Ok(())
}

fn half_hbar(c: i64) -> Affine {
    Affine::term(VarTable::HBAR, qf(c, 2))
}

fn shift_of(nvars: usize, slots: &[usize], e: i8) -> ShiftMono {
    let mut exps = vec![0i8; nvars];
    for &s in slots {
        exps[s] = e;
    }
    ShiftMono::from_exps(&exps)
}

/// `Σ_{|I|=n} f(w_{i,I}) ∏_{h: out=i, r∈I} ∏_{s} (−w_{i,r} + w_{in(h),s} − ħ/2)
/// / ∏_{r∈I, s∉I}(w_{i,r} − w_{i,s}) · ∏_{r∈I} u_{i,r}`, where loops skip
/// `s ∈ I`.
pub fn quiver_e(q: &QuiverTheory, i: usize, n: usize, f: &SymFunc, dilation: Dilation) -> Result<DiffOp> {
    check_index(q, i, n)?;
    let vt = q.var_table();
    let nv = vt.len();
    let w = |v: usize, r: usize| vt.gauge_slot(v, r).expect("gauge slot exists");
    let terms: Vec<(ShiftMono, RatFunc)> = subsets(q.dim[i], n)
        .into_par_iter()
        .map(|set| {
            let mut num = Vec::new();
            for (_, j) in q.arrows_out(i) {
                for &r in &set {
                    for s in 0..q.dim[j] {
                        if j != i || !set.contains(&s) {
                            let mut a = Affine::var(w(j, s)) - Affine::var(w(i, r)) - half_hbar(1);
                            if dilation == Dilation::On {
                                a = a + Affine::var(VarTable::TFLAVOR);
                            }
                            num.push(a);
                        }
                    }
                }
            }
            let dens: Vec<Affine> = set
                .iter()
                .flat_map(|&r| (0..q.dim[i]).filter(|s| !set.contains(s)).map(move |s| (r, s)))
                .map(|(r, s)| Affine::var(w(i, r)) - Affine::var(w(i, s)))
                .collect();
            let vals: Vec<MPoly> = set.iter().map(|&r| MPoly::var(nv, w(i, r))).collect();
            let numer = f.eval(&vals, nv);
            let slots: Vec<usize> = set.iter().map(|&r| w(i, r)).collect();
            (shift_of(nv, &slots, 1), RatFunc::factored(numer, &num, &dens).expect("distinct gauge roots"))
        })
        .collect();
    Ok(DiffOp::from_terms(nv, terms))
}

/// `Σ_{|I|=n} f(w_{i,I} − ħ) ∏_{r∈I, k: i_k=i}(w_{i,r} − z_k − ħ/2)
/// ∏_{h: in=i, r∈I} ∏_s (w_{i,r} − w_{out(h),s} − ħ/2) / ∏_{r∈I, s∉I}(−w_{i,r} + w_{i,s})
/// · ∏_{r∈I} u_{i,r}^{−1}`, where loops skip `s ∈ I`.
pub fn quiver_f(q: &QuiverTheory, i: usize, n: usize, f: &SymFunc, dilation: Dilation) -> Result<DiffOp> {
    check_index(q, i, n)?;
    let vt = q.var_table();
    let nv = vt.len();
    let w = |v: usize, r: usize| vt.gauge_slot(v, r).expect("gauge slot exists");
    let masses = vt.vertex_masses(i);
    let terms: Vec<(ShiftMono, RatFunc)> = subsets(q.dim[i], n)
        .into_par_iter()
        .map(|set| {
            let tflavor = || if dilation == Dilation::On { Affine::var(VarTable::TFLAVOR) } else { Affine::default() };
            let mut num = Vec::new();
            for &r in &set {
                for &z in &masses {
                    num.push(Affine::var(w(i, r)) - Affine::var(z) - half_hbar(1) + tflavor());
                }
            }
            for (j, _) in q.arrows_in(i) {
                for &r in &set {
                    for s in 0..q.dim[j] {
                        if j != i || !set.contains(&s) {
                            num.push(Affine::var(w(i, r)) - Affine::var(w(j, s)) - half_hbar(1) + tflavor());
                        }
                    }
                }
            }
            let dens: Vec<Affine> = set
                .iter()
                .flat_map(|&r| (0..q.dim[i]).filter(|s| !set.contains(s)).map(move |s| (r, s)))
                .map(|(r, s)| Affine::var(w(i, s)) - Affine::var(w(i, r)))
                .collect();
            let vals: Vec<MPoly> = set.iter().map(|&r| (Affine::var(w(i, r)) - Affine::var(VarTable::HBAR)).to_mpoly(nv)).collect();
            let numer = f.eval(&vals, nv);
            let slots: Vec<usize> = set.iter().map(|&r| w(i, r)).collect();
            (shift_of(nv, &slots, -1), RatFunc::factored(numer, &num, &dens).expect("distinct gauge roots"))
        })
        .collect();
    Ok(DiffOp::from_terms(nv, terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    E,
    F,
}

/// Operators `E_n[f]`, `F_n[f]` of the Jordan quiver with `dim V = a`,
/// `dim W = l`, in the variables where `−ħ/2` has been absorbed into `𝐭`.
/// The variable table is that of `QuiverTheory::jordan(a, l)`.
pub fn jordan_ops(a: usize, l: usize, n: usize, f: &SymFunc, kind: OpKind) -> Result<DiffOp> {
    let q = QuiverTheory::jordan(a, l);
    check_index(&q, 0, n)?;
    let vt = q.var_table();
    let nv = vt.len();
    let ws = vt.vertex_slots(0);
    let masses = vt.masses().to_vec();
    let t = Affine::var(VarTable::TFLAVOR);
    let terms: Vec<(ShiftMono, RatFunc)> = subsets(a, n)
        .into_par_iter()
        .map(|set| {
            let mut num = Vec::new();
            let mut dens = Vec::new();
            for &r in &set {
                for s in (0..a).filter(|s| !set.contains(s)) {
                    let d = Affine::var(ws[r]) - Affine::var(ws[s]);
                    num.push(match kind {
                        OpKind::E => d.clone() - t.clone(),
                        OpKind::F => d.clone() + t.clone(),
                    });
                    dens.push(d);
                }
            }
            let vals: Vec<MPoly> = match kind {
                OpKind::E => set.iter().map(|&r| MPoly::var(nv, ws[r])).collect(),
                OpKind::F => set.iter().map(|&r| (Affine::var(ws[r]) - Affine::var(VarTable::HBAR)).to_mpoly(nv)).collect(),
            };
            let e = match kind {
                OpKind::E => 1,
                OpKind::F => {
                    for &r in &set {
                        for &z in &masses {
                            num.push(Affine::var(ws[r]) - Affine::var(VarTable::HBAR) - Affine::var(z));
                        }
                    }
                    -1
                }
            };
            let numer = f.eval(&vals, nv);
            let slots: Vec<usize> = set.iter().map(|&r| ws[r]).collect();
            (shift_of(nv, &slots, e), RatFunc::factored(numer, &num, &dens).expect("distinct gauge roots"))
        })
        .collect();
    Ok(DiffOp::from_terms(nv, terms))
}

/// Rewrites an operator in the absorbed Jordan variables in terms of the
/// raw ones: `z_k ↦ z_k − ħ − 𝐭`, then `𝐭 ↦ 𝐭 − ħ/2`. Multiplying a raw
/// dilated operator by `(−1)^{n(a−n)}` gives the image of `jordan_ops`.
pub fn absorbed_to_raw(op: &DiffOp, vt: &VarTable) -> Result<DiffOp> {
    let masses = vt.masses().to_vec();
    op.try_map_coeffs(|f| {
        let mut g = f.clone();
        for &z in &masses {
            g = g.substitute(z, &(Affine::var(z) - Affine::var(VarTable::HBAR) - Affine::var(VarTable::TFLAVOR)))?;
        }
        Ok(g.substitute(VarTable::TFLAVOR, &(Affine::var(VarTable::TFLAVOR) - half_hbar(1)))?)
    })
}

/// A weight of `𝐍`: integer pairing data on the torus coordinates plus a
/// flavor part (masses, `𝐭`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NWeight {
    pub torus: Vec<i64>,
    pub flavor: Affine,
}

impl NWeight {
    fn affine(&self, coords: &[usize]) -> Affine {
        let mut a = self.flavor.clone();
        for (c, &s) in self.torus.iter().zip(coords) {
            if *c != 0 {
                a = a + Affine::term(s, q(*c));
            }
        }
        a
    }
}

fn root_affine(root: &[i64], coords: &[usize]) -> Affine {
    NWeight { torus: root.to_vec(), flavor: Affine::default() }.affine(coords)
}

/// Weights of a quiver representation on the torus of `∏ GL(V_i)`, with
/// coordinates the gauge slots in vertex order.
pub fn quiver_weights(q: &QuiverTheory, vt: &VarTable) -> Vec<NWeight> {
    let offsets: Vec<usize> = q.dim.iter().scan(0, |acc, &a| {
        let o = *acc;
        *acc += a;
        Some(o)
    }).collect();
    let total: usize = q.dim.iter().sum();
    let unit = |v: usize, r: usize| {
        let mut e = vec![0i64; total];
        e[offsets[v] + r] = 1;
        e
    };
    let mut out = Vec::new();
    for &(a, b) in &q.arrows {
        for r in 0..q.dim[a] {
            for s in 0..q.dim[b] {
                let torus: Vec<i64> = unit(b, s).iter().zip(unit(a, r)).map(|(x, y)| x - y).collect();
                out.push(NWeight { torus, flavor: Affine::default() });
            }
        }
    }
    for &z in vt.masses() {
        let v = match vt.slot(z).kind {
            crate::ratfield::SlotKind::Mass { vertex, .. } => vertex,
            _ => unreachable!("mass slots carry their vertex"),
        };
        for r in 0..q.dim[v] {
            out.push(NWeight { torus: unit(v, r), flavor: -Affine::var(z) });
        }
    }
    out
}

/// Adjoint representation with the dilatation `𝐭`: every root, shifted by `𝐭`.
pub fn adjoint_weights(rd: &RootDatum) -> Vec<NWeight> {
    rd.roots
        .iter()
        .map(|(r, _)| NWeight { torus: r.clone(), flavor: Affine::var(VarTable::TFLAVOR) })
        .collect()
}

fn orbit_shift(nv: usize, coords: &[usize], lambda: &[i64]) -> ShiftMono {
    let mut exps = vec![0i8; nv];
    for (&s, &l) in coords.iter().zip(lambda) {
        exps[s] = i8::try_from(l).expect("shift exponent fits in i8");
    }
    ShiftMono::from_exps(&exps)
}

/// `Σ_{λ'=wλ} wf · ∏_{χ: ⟨χ,λ'⟩<0} ∏_{j=⟨χ,λ'⟩}^{−1}(χ + (j+½)ħ) / ∏_{α: ⟨α,λ'⟩=1} α · u_{λ'}`
/// for a minuscule dominant coweight `λ`. `coords` lists the slots of the
/// torus coordinates, `f` is a polynomial in those slots.
pub fn minuscule_general(rd: &RootDatum, coords: &[usize], lambda: &[i64], f: &MPoly, weights: &[NWeight]) -> Result<DiffOp> {
    if !rd.is_minuscule(lambda) || !rd.is_dominant(lambda) {
        return Err(CbxError::NotMinuscule);
    }
    let nv = f.nvars();
    let orbit: Vec<(Vec<i64>, IMat)> = rd.weyl_orbit(lambda);
    let terms: Vec<(ShiftMono, RatFunc)> = orbit
        .into_par_iter()
        .map(|(lp, m)| {
            let mut num = Vec::new();
            for chi in weights {
                let p = RootDatum::pairing(&chi.torus, &lp);
                for j in p..0 {
                    num.push(chi.affine(coords) + Affine::term(VarTable::HBAR, qf(2 * j + 1, 2)));
                }
            }
            let dens: Vec<Affine> = rd
                .roots
                .iter()
                .filter(|(r, _)| RootDatum::pairing(r, &lp) == 1)
                .map(|(r, _)| root_affine(r, coords))
                .collect();
            let wf = RootDatum::act_on_poly(&m, f, coords);
            let numer = wf;
            (orbit_shift(nv, coords, &lp), RatFunc::factored(numer, &num, &dens).expect("roots are nonzero forms"))
        })
        .collect();
    Ok(DiffOp::from_terms(nv, terms))
}

/// The quasi-minuscule operator for `λ = α₀`: for each orbit element, a
/// shift term and a shiftless term sharing the product over roots positive
/// on `wλ`.
pub fn quasi_minuscule(rd: &RootDatum, coords: &[usize], f: &MPoly) -> DiffOp {
    let nv = f.nvars();
    let (_, theta_co) = rd.highest_root();
    let t = Affine::var(VarTable::TFLAVOR);
    let terms: Vec<(ShiftMono, RatFunc)> = rd
        .weyl_orbit(&theta_co)
        .into_par_iter()
        .flat_map(|(lp, m)| {
            let wf = RootDatum::act_on_poly(&m, f, coords);
            let long = rd.roots.iter().find(|(r, _)| RootDatum::pairing(r, &lp) == 2).expect("orbit of the highest coroot").0.clone();
            let beta = root_affine(&long, coords);
            let pos: Vec<Affine> = rd
                .roots
                .iter()
                .filter(|(r, _)| RootDatum::pairing(r, &lp) > 0)
                .map(|(r, _)| root_affine(r, coords))
                .collect();
            let common_num: Vec<Affine> = pos.iter().map(|a| -a.clone() - half_hbar(1) + t.clone()).collect();
            let mut num1 = common_num.clone();
            num1.push(-beta.clone() - half_hbar(3) + t.clone());
            let mut den1 = pos.clone();
            den1.push(beta.clone() + Affine::var(VarTable::HBAR));
            let mut num2 = common_num;
            num2.push(beta.clone() + half_hbar(1) + t.clone());
            let mut den2 = pos;
            den2.push(-beta - Affine::var(VarTable::HBAR));
            let c1 = RatFunc::factored(wf.clone(), &num1, &den1).expect("roots are nonzero forms");
            let c2 = RatFunc::factored(wf, &num2, &den2).expect("roots are nonzero forms");
            vec![(orbit_shift(nv, coords, &lp), c1), (ShiftMono::identity(nv), c2)]
        })
        .collect();
    DiffOp::from_terms(nv, terms)
}

/// Variable table with one gauge-type slot `x{i}` per simple root, used as
/// torus coordinates for a simple root datum.
pub fn root_datum_table(rd: &RootDatum) -> (VarTable, Vec<usize>) {
    let vt = VarTable::with_gauge("x", rd.rank);
    let coords = vt.gauge().to_vec();
    (vt, coords)
}

/// Monopole operators for small fundamental coweights are not provided.
pub fn small_fundamental(_rd: &RootDatum, _i: usize) -> Result<DiffOp> {
    Err(CbxError::Unsupported(
        "operators for small fundamental coweights need Levi-chain tables and are not implemented".into(),
    ))
}

/// Sign `(−1)^{n(a−n)}`.
pub fn jordan_sign(a: usize, n: usize) -> Q {
    if (n * (a - n)).is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Checks that an operator is unchanged by every transposition of the
/// gauge variables at one vertex.
pub fn is_vertex_symmetric(op: &DiffOp, vt: &VarTable, vertex: usize) -> bool {
    let slots = vt.vertex_slots(vertex);
    slots.windows(2).all(|w| {
        let mut map: Vec<usize> = (0..vt.len()).collect();
        map.swap(w[0], w[1]);
        op.permute_slots(&map) == *op
    })
}

/// Coefficient-free monomial helper used in tests of specializations.
pub fn shift_monomial(nv: usize, slots: &[(usize, i8)]) -> ShiftMono {
    let mut exps = vec![0i8; nv];
    for &(s, e) in slots {
        exps[s] = e;
    }
    ShiftMono::from_exps(&exps)
}

/// `w_r^l` as a rational function.
pub fn power_of_slot(nv: usize, slot: usize, l: u8) -> RatFunc {
    RatFunc::from_mpoly(MPoly::monomial(nv, Mono::var(nv, slot, l), Q::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::SlotKind;

    #[test]
    fn parses_symmetric_functions() {
        let f = SymFunc::parse("e1^2 - 2*e2 + 1/2").unwrap();
        let nv = 2;
        let vals = vec![MPoly::var(nv, 0), MPoly::var(nv, 1)];
        let expect = MPoly::var(nv, 0).pow(2).add(&MPoly::var(nv, 1).pow(2)).add(&MPoly::constant(nv, qf(1, 2)));
        assert_eq!(f.eval(&vals, nv), expect);
        assert!(SymFunc::parse("1").unwrap().is_one());
        assert!(SymFunc::parse("e0").is_err());
        assert!(SymFunc::parse("e1 +").is_err());
        assert_eq!(SymFunc::parse("(e1+1)(e1-1)").unwrap(), SymFunc::parse("e1^2-1").unwrap());
    }

    #[test]
    fn subsets_listed() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn single_vertex_operators() {
        let q1 = QuiverTheory::type_a(&[1], &[0]);
        let vt = q1.var_table();
        let w = vt.gauge()[0];
        assert_eq!(quiver_e(&q1, 0, 1, &SymFunc::one(), Dilation::Off).unwrap(), DiffOp::shift(vt.len(), w, 1));
        assert_eq!(quiver_f(&q1, 0, 1, &SymFunc::one(), Dilation::Off).unwrap(), DiffOp::shift(vt.len(), w, -1));
        assert!(matches!(quiver_e(&q1, 0, 2, &SymFunc::one(), Dilation::Off), Err(CbxError::IndexOutOfRange(_))));
        assert!(matches!(vt.slot(w).kind, SlotKind::Gauge { .. }));
    }

    #[test]
    fn small_fundamental_unsupported() {
        let rd = RootDatum::simple('D', 4).unwrap();
        assert!(matches!(small_fundamental(&rd, 1), Err(CbxError::Unsupported(_))));
    }

    #[test]
    fn lambda_zero_gives_f() {
        let rd = RootDatum::simple('A', 2).unwrap();
        let (vt, coords) = root_datum_table(&rd);
        let f = MPoly::var(vt.len(), coords[0]).add(&MPoly::var(vt.len(), coords[1]));
        let op = minuscule_general(&rd, &coords, &[0, 0], &f, &adjoint_weights(&rd)).unwrap();
        assert_eq!(op, DiffOp::scalar(RatFunc::from_mpoly(f)));
    }
}
