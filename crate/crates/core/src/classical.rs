//! The commutative layer at `ħ = 0`: the coordinate map `Ξ`, rank-2
//! zastava presentations, the surfaces `xy = wˡ` and their symmetric powers
//! as Hilbert-series oracles, and the Poisson-bracket table.

use crate::error::{CbxError, Result};
use crate::monopole::{hilbert_series, Series};
use crate::quiverdata::QuiverTheory;
use crate::ratfield::{q as qn, Affine, MPoly, RatFunc, VarTable};
use crate::shiftalg::{op_poisson_limit, DiffOp};
use crate::yangian::{gklo_image, Generator, Status, VerificationReport};
use serde::Serialize;

/// A graded commutative ring `ℂ[generators]/(relations)`.
///
/// The relations must form a Gröbner basis for the lexicographic order in
/// generator order; graded dimensions are then counts of standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRing {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub relations: Vec<MPoly>,
}

impl ClassicalRing {
    pub fn new(names: &[&str], degrees: &[i64], relations: Vec<MPoly>) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(CbxError::IndexOutOfRange("one degree per generator".into()));
        }
        for r in &relations {
            if r.nvars() != names.len() || r.homogeneous_degree(degrees).is_none() && !r.is_zero() {
                return Err(CbxError::Inhomogeneous);
            }
        }
        Ok(ClassicalRing { names: names.iter().map(|s| s.to_string()).collect(), degrees: degrees.to_vec(), relations })
    }

    /// `ℂ[x, y, w]/(xy − wˡ)` with `deg x = deg y = l`, `deg w = 2`.
    pub fn surface(l: usize) -> Self {
        let nv = 3;
        let xy = MPoly::var(nv, 0).mul(&MPoly::var(nv, 1));
        let rel = xy.sub(&MPoly::var(nv, 2).pow(l as u32));
        ClassicalRing::new(&["x", "y", "w"], &[l as i64, l as i64, 2], vec![rel]).expect("homogeneous relation")
    }

    fn leading_monomials(&self) -> Vec<Vec<u8>> {
        self.relations
            .iter()
            .filter_map(|r| r.terms().map(|(m, _)| m.exps().to_vec()).max())
            .collect()
    }

    /// Number of standard monomials in each degree `0..=order`.
    pub fn graded_dims(&self, order: i64) -> Result<Series> {
        if let Some(k) = self.degrees.iter().position(|&d| d <= 0) {
            return Err(CbxError::TruncationUnstable { box_size: 0, exponent: self.degrees[k].min(0) });
        }
        let leads = self.leading_monomials();
        let mut counts = vec![0i64; order as usize + 1];
        let mut exps = vec![0u8; self.names.len()];
        self.count(0, 0, order, &leads, &mut exps, &mut counts);
        Ok(Series::from_pairs(&counts.iter().enumerate().map(|(e, &c)| (e as i64, c)).collect::<Vec<_>>(), order))
    }

    fn count(&self, k: usize, deg: i64, order: i64, leads: &[Vec<u8>], exps: &mut Vec<u8>, counts: &mut [i64]) {
        if k == exps.len() {
            let standard = leads.iter().all(|lm| lm.iter().zip(exps.iter()).any(|(l, e)| e < l));
            if standard {
                counts[deg as usize] += 1;
            }
            return;
        }
        let mut e = 0u8;
        while deg + e as i64 * self.degrees[k] <= order {
            exps[k] = e;
            self.count(k + 1, deg + e as i64 * self.degrees[k], order, leads, exps, counts);
            e += 1;
        }
        exps[k] = 0;
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Graded dimension of `Sym^a` of a graded space, by the cycle index of `S_a`:
/// `a!·h_a[f] = Σ_λ (a!/z_λ) ∏_i f(t^{λ_i})`.
pub fn sym_power(f: &Series, a: usize) -> Result<Series> {
    let order = f.order();
    let mut total = Series::zero(order);
    for lam in partitions(a, a) {
        let mut z = 1i64;
        let mut k = 0;
        while k < lam.len() {
            let part = lam[k];
            let m = lam[k..].iter().take_while(|&&p| p == part).count();
            z *= (part as i64).pow(m as u32) * factorial(m);
            k += m;
        }
        let term = lam.iter().fold(Series::one(order), |acc, &p| acc.mul(&f.dilate(p as i64)));
        total = total.add(&term.scale(factorial(a) / z));
    }
    let n = factorial(a);
    let pairs = total
        .to_pairs()
        .into_iter()
        .map(|(e, c)| if c % n == 0 { Ok((e, c / n)) } else { Err(CbxError::Unsupported(format!("non-integral coefficient {c}/{n}"))) })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_pairs(&pairs, order))
}

/// Compares the monopole series of the Jordan theory `(a, l)` with the
/// cycle-index `Sym^a` of the surface `xy = wˡ`.
pub fn surface_sym_check(a: usize, l: usize, order: i64) -> Result<VerificationReport> {
    let oracle = sym_power(&ClassicalRing::surface(l).graded_dims(order)?, a)?;
    let th = QuiverTheory::jordan(a, l);
    let box_size = order / l.max(1) as i64 + 1;
    let monopole = hilbert_series(&th, order, box_size)?;
    Ok(series_report(format!("Sym^{a}(S_{l})"), &monopole, &oracle))
}

/// Compares the monopole series of `U(1)` with `l` flavors to the surface.
pub fn abelian_surface_check(l: usize, order: i64) -> Result<VerificationReport> {
    let oracle = ClassicalRing::surface(l).graded_dims(order)?;
    let th = QuiverTheory::type_a(&[1], &[l]);
    let monopole = hilbert_series(&th, order, order / l.max(1) as i64 + 1)?;
    Ok(series_report(format!("S_{l}"), &monopole, &oracle))
}

/// Report comparing two truncated series coefficient-wise.
pub fn series_report(relation: String, lhs: &Series, rhs: &Series) -> VerificationReport {
    let diff = lhs.first_difference(rhs);
    VerificationReport {
        relation,
        vertices: vec![],
        status: if diff.is_none() { Status::Verified } else { Status::Failed },
        lhs_terms: lhs.to_pairs().len(),
        rhs_terms: rhs.to_pairs().len(),
        witness: diff.map(|e| format!("t^{e}: {} vs {}", lhs.coeff(e), rhs.coeff(e))),
    }
}

/// `Ξ(y_{i,r}) = u_{i,r} · ∏_{h: out(h)=i} ∏_s (w_{in(h),s} − w_{i,r})`.
pub fn xi_map(q: &QuiverTheory, i: usize, r: usize) -> Result<DiffOp> {
    let vt = q.var_table();
    let nv = vt.len();
    let slot = vt.gauge_slot(i, r).ok_or_else(|| CbxError::IndexOutOfRange(format!("w_{{{i},{r}}}")))?;
    let mut c = MPoly::one(nv);
    for (_, j) in q.arrows_out(i) {
        for s in 0..q.dim[j] {
            let f = Affine::var(vt.gauge_slot(j, s).expect("gauge slot")) - Affine::var(slot);
            c = c.mul(&f.to_mpoly(nv));
        }
    }
    Ok(DiffOp::shift(nv, slot, 1).lmul(&RatFunc::from_mpoly(c)))
}

fn at_classical(op: &DiffOp) -> Result<DiffOp> {
    op.specialize(&[(VarTable::HBAR, qn(0))])
}

/// The three rank-2 zastava shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZastavaCase {
    Disconnected,
    Connected,
    SameVertex,
}

impl std::str::FromStr for ZastavaCase {
    type Err = CbxError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disconnected" => Ok(ZastavaCase::Disconnected),
            "connected" => Ok(ZastavaCase::Connected),
            "same-vertex" => Ok(ZastavaCase::SameVertex),
            _ => Err(CbxError::schema(Some("case".into()), format!("unknown zastava case '{s}'"))),
        }
    }
}

/// Checks the rank-2 zastava presentation at `ħ = 0`.
pub fn zastava_rank2_check(case: ZastavaCase) -> Result<VerificationReport> {
    let (th, label) = match case {
        ZastavaCase::Disconnected => (QuiverTheory::new(&["i", "j"], &[], &[1, 1], &[0, 0])?, "disconnected"),
        ZastavaCase::Connected => (QuiverTheory::new(&["i", "j"], &[(0, 1)], &[1, 1], &[0, 0])?, "connected"),
        ZastavaCase::SameVertex => (QuiverTheory::new(&["i"], &[], &[2], &[0])?, "same-vertex"),
    };
    let vt = th.var_table();
    let nv = vt.len();
    let w = |v: usize, r: usize| Affine::var(vt.gauge_slot(v, r).expect("gauge slot"));
    let u = |v: usize, r: usize| DiffOp::shift(nv, vt.gauge_slot(v, r).expect("gauge slot"), 1);
    let pairs = match case {
        ZastavaCase::Disconnected => vec![
            ("Xi(y_i)".to_string(), at_classical(&xi_map(&th, 0, 0)?)?, u(0, 0)),
            ("Xi(y_j)".to_string(), at_classical(&xi_map(&th, 1, 0)?)?, u(1, 0)),
        ],
        ZastavaCase::Connected => {
            let prod = at_classical(&xi_map(&th, 0, 0)?.mul(&xi_map(&th, 1, 0)?))?;
            let wji = RatFunc::from_affine(nv, &(w(1, 0) - w(0, 0)));
            let yij = prod.lmul(&wji.inv()?);
            let unit = u(0, 0).mul(&u(1, 0));
            vec![
                ("y_ij".to_string(), yij.clone(), unit),
                ("y_i y_j - y_ij (w_j - w_i)".to_string(), prod.sub(&yij.lmul(&wji)), DiffOp::zero(nv)),
            ]
        }
        ZastavaCase::SameVertex => {
            let diff = at_classical(&xi_map(&th, 0, 0)?.sub(&xi_map(&th, 0, 1)?))?;
            let w12 = RatFunc::from_affine(nv, &(w(0, 0) - w(0, 1)));
            let xi = diff.lmul(&w12.inv()?);
            let (s1, s2) = (vt.gauge_slot(0, 0).expect("slot"), vt.gauge_slot(0, 1).expect("slot"));
            let mut swap: Vec<usize> = (0..nv).collect();
            swap.swap(s1, s2);
            vec![
                ("y_1 - y_2 - xi (w_1 - w_2)".to_string(), diff.sub(&xi.lmul(&w12)), DiffOp::zero(nv)),
                ("xi symmetric".to_string(), xi.permute_slots(&swap), xi),
            ]
        }
    };
    Ok(VerificationReport::compare_many(format!("zastava {label}"), th.vertices.clone(), &pairs, &vt))
}

/// One entry of the Poisson table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonTable {
    pub entries: Vec<PoissonEntry>,
    pub report: VerificationReport,
}

/// `{a, b} = lim_{ħ→0} (ab − ba)/ħ` on all pairs of `w_{i,r}` and `u_{i,r}`,
/// checked against `{w_{i,r}, u_{j,s}} = −δ_{ij}δ_{rs} u_{j,s}`.
pub fn poisson_table(q: &QuiverTheory) -> Result<PoissonTable> {
    let vt = q.var_table();
    let nv = vt.len();
    // (name, operator, slot, is a shift)
    let mut gens: Vec<(String, DiffOp, usize, bool)> = Vec::new();
    for &s in vt.gauge() {
        gens.push((vt.name(s).to_string(), DiffOp::scalar(RatFunc::var(nv, s)), s, false));
    }
    for &s in vt.gauge() {
        gens.push((format!("u[{}]", vt.name(s)), DiffOp::shift(nv, s, 1), s, true));
    }
    let mut entries = Vec::new();
    let mut pairs = Vec::new();
    for (ln, l, ls, lu) in &gens {
        for (rn, r, rs, ru) in &gens {
            let value = op_poisson_limit(l, r)?;
            let expect = match (lu, ru) {
                (false, true) if ls == rs => DiffOp::shift(nv, *rs, 1).scale(&qn(-1)),
                (true, false) if ls == rs => DiffOp::shift(nv, *ls, 1),
                _ => DiffOp::zero(nv),
            };
            entries.push(PoissonEntry { left: ln.clone(), right: rn.clone(), value: value.render(&vt) });
            pairs.push((format!("{{{ln}, {rn}}}"), value, expect));
        }
    }
    let report = VerificationReport::compare_many("poisson", q.vertices.clone(), &pairs, &vt);
    Ok(PoissonTable { entries, report })
}

/// Lagrange interpolation in partial-fraction form: with abstract symbols
/// `y_r`, `P(z) = W(z)·Σ_r y_r/((z − w_r)W_r(w_r))` is a polynomial in `z`
/// with `P(w_r) = y_r`.
pub fn lagrange_check(a: usize) -> Result<VerificationReport> {
    let th = QuiverTheory::type_a(&[a], &[0]);
    let aux: Vec<String> = (1..=a).map(|r| format!("y{r}")).collect();
    let vt = th.var_table_with_aux(&aux);
    let nv = vt.len();
    let zs = vt.spectral(0);
    let z = Affine::var(zs);
    let w: Vec<Affine> = vt.gauge().iter().map(|&s| Affine::var(s)).collect();
    let mut sum = RatFunc::zero(nv);
    for r in 0..a {
        let mut dens = vec![z.clone() - w[r].clone()];
        dens.extend((0..a).filter(|&s| s != r).map(|s| w[r].clone() - w[s].clone()));
        sum = sum.add(&RatFunc::quotient(MPoly::var(nv, vt.aux()[r]), &dens)?);
    }
    let wz = (0..a).fold(RatFunc::one(nv), |acc, s| acc.mul(&RatFunc::from_affine(nv, &(z.clone() - w[s].clone()))));
    let p = sum.mul(&wz);
    let mut pairs = vec![("P polynomial in z".to_string(), DiffOp::scalar(p.principal_part(zs)), DiffOp::zero(nv))];
    for (r, wr) in w.iter().enumerate().take(a) {
        pairs.push((format!("P(w_{})", r + 1), DiffOp::scalar(p.substitute(zs, wr)?), DiffOp::scalar(RatFunc::var(nv, vt.aux()[r]))));
    }
    Ok(VerificationReport::compare_many("lagrange", th.vertices.clone(), &pairs, &vt))
}

/// At `ħ = 0`, `F_i(z) = ± Σ_r Ξ(y_{i,r}) / ((z − w_{i,r}) W_{i,r}(w_{i,r}))`,
/// the sign being `(−1)^{Σ_{out(h)=i} a_{in(h)}}`.
pub fn gklo_f_xi_check(q: &QuiverTheory, i: usize) -> Result<VerificationReport> {
    let vt = q.var_table();
    let nv = vt.len();
    let lhs = at_classical(&gklo_image(q, Generator::F, i, 0)?)?;
    let z = Affine::var(vt.spectral(0));
    let out_dim: usize = q.arrows_out(i).map(|(_, j)| q.dim[j]).sum();
    let sign = if out_dim.is_multiple_of(2) { qn(1) } else { qn(-1) };
    let mut rhs = DiffOp::zero(nv);
    for r in 0..q.dim[i] {
        let wr = Affine::var(vt.gauge_slot(i, r).expect("slot"));
        let mut dens = vec![z.clone() - wr.clone()];
        dens.extend((0..q.dim[i]).filter(|&s| s != r).map(|s| wr.clone() - Affine::var(vt.gauge_slot(i, s).expect("slot"))));
        let c = RatFunc::quotient(MPoly::one(nv), &dens)?;
        rhs = rhs.add(&xi_map(q, i, r)?.lmul(&c));
    }
    let rhs = at_classical(&rhs.scale(&sign))?;
    Ok(VerificationReport::compare("F vs Xi", vec![q.vertices[i].clone()], &lhs, &rhs, &vt))
}
