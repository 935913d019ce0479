//! GKLO images of the shifted Yangian generators as difference operators
//! with a spectral parameter, coefficient extraction, exact verification of
//! the defining relations, Rees degrees and the truncation kernel.

use crate::error::{CbxError, Result};
use crate::quiverdata::QuiverTheory;
use crate::ratfield::{q as qn, qf, Affine, MPoly, RatFunc, VarTable, Q};
use crate::shiftalg::{standard_weights, DiffOp, ShiftMono};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Generating series of the shifted Yangian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    A,
    E,
    F,
    H,
}

impl FromStr for Generator {
    type Err = CbxError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Generator::A),
            "E" => Ok(Generator::E),
            "F" => Ok(Generator::F),
            "H" => Ok(Generator::H),
            _ => Err(CbxError::schema(Some("generator".into()), format!("unknown generator '{s}'"))),
        }
    }
}

/// A difference operator whose coefficients may involve spectral slots.
pub type SpectralOp = DiffOp;

/// The pairings `⟨μ, α_i^∨⟩`, `⟨μ₁, α_i^∨⟩`, `⟨μ₂, α_i^∨⟩` and `⟨λ, α_i^∨⟩ = l_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftData {
    pub mu: Vec<i64>,
    pub mu1: Vec<i64>,
    pub mu2: Vec<i64>,
    pub lambda: Vec<i64>,
}

impl ShiftData {
    pub fn new(q: &QuiverTheory) -> Self {
        let n = q.n_vertices();
        ShiftData {
            mu: (0..n).map(|i| q.mu_pairing(i)).collect(),
            mu1: (0..n).map(|i| q.mu1_pairing(i)).collect(),
            mu2: (0..n).map(|i| q.mu2_pairing(i)).collect(),
            lambda: q.flavor.iter().map(|&l| l as i64).collect(),
        }
    }
}

fn require_no_loops(q: &QuiverTheory) -> Result<()> {
    if q.has_loops() {
        Err(CbxError::LoopsUnsupported)
    } else {
        Ok(())
    }
}

fn check_vertex(q: &QuiverTheory, i: usize) -> Result<()> {
    if i >= q.n_vertices() {
        return Err(CbxError::IndexOutOfRange(format!("vertex {i} (theory has {} vertices)", q.n_vertices())));
    }
    Ok(())
}

fn hbar(c: Q) -> Affine {
    Affine::term(VarTable::HBAR, c)
}

/// Builder for the polynomial pieces `Z_i`, `W_i`, `W_{i,r}` evaluated at
/// affine arguments.
struct Pieces<'a> {
    q: &'a QuiverTheory,
    vt: VarTable,
    nv: usize,
}

impl<'a> Pieces<'a> {
    fn new(q: &'a QuiverTheory) -> Self {
        let vt = q.var_table();
        let nv = vt.len();
        Pieces { q, vt, nv }
    }

    fn w(&self, v: usize, r: usize) -> Affine {
        Affine::var(self.vt.gauge_slot(v, r).expect("gauge slot exists"))
    }

    fn prod(&self, factors: impl IntoIterator<Item = Affine>) -> MPoly {
        factors.into_iter().fold(MPoly::one(self.nv), |acc, a| acc.mul(&a.to_mpoly(self.nv)))
    }

    /// `Z_i(x) = ∏_{k: i_k = i}(x − z_k − ħ/2)`.
    fn z_factors(&self, i: usize, x: &Affine) -> Vec<Affine> {
        self.vt.vertex_masses(i).into_iter().map(|z| x.clone() - Affine::var(z) - hbar(qf(1, 2))).collect()
    }

    /// `W_j(x) = ∏_s (x − w_{j,s})`.
    fn w_factors(&self, j: usize, x: &Affine) -> Vec<Affine> {
        (0..self.q.dim[j]).map(|s| x.clone() - self.w(j, s)).collect()
    }

    /// `W_{i,r}(x) = ∏_{s≠r}(x − w_{i,s})`.
    fn w_except(&self, i: usize, r: usize, x: &Affine) -> Vec<Affine> {
        (0..self.q.dim[i]).filter(|&s| s != r).map(|s| x.clone() - self.w(i, s)).collect()
    }

    fn shift(&self, i: usize, r: usize, e: i8) -> ShiftMono {
        ShiftMono::unit(self.nv, self.vt.gauge_slot(i, r).expect("gauge slot exists"), e)
    }
}

/// Image of the generating series `gen_i(ζ)` with `ζ` the spectral slot
/// `spectral` (0, 1 or 2).
pub fn gklo_image(q: &QuiverTheory, gen: Generator, i: usize, spectral: usize) -> Result<SpectralOp> {
    require_no_loops(q)?;
    check_vertex(q, i)?;
    let p = Pieces::new(q);
    let nv = p.nv;
    let zeta = Affine::var(p.vt.spectral(spectral));
    let quotient = |num: MPoly, dens: &[Affine]| RatFunc::quotient(num, dens).expect("distinct linear denominators");
    Ok(match gen {
        Generator::A => {
            let dens = vec![zeta.clone(); q.dim[i]];
            DiffOp::scalar(quotient(p.prod(p.w_factors(i, &zeta)), &dens))
        }
        Generator::H => {
            let mut num = p.z_factors(i, &zeta);
            let arg = zeta.clone() - hbar(qf(1, 2));
            for j in q.doubled_neighbors(i) {
                num.extend(p.w_factors(j, &arg));
            }
            let mut dens = p.w_factors(i, &zeta);
            dens.extend(p.w_factors(i, &(zeta.clone() - hbar(qn(1)))));
            DiffOp::scalar(quotient(p.prod(num), &dens))
        }
        Generator::E => {
            let terms = (0..q.dim[i])
                .map(|r| {
                    let wr = p.w(i, r);
                    let mut num = p.z_factors(i, &wr);
                    for (j, _) in q.arrows_in(i) {
                        num.extend(p.w_factors(j, &(wr.clone() - hbar(qf(1, 2)))));
                    }
                    let mut dens = vec![zeta.clone() - wr.clone()];
                    dens.extend(p.w_except(i, r, &wr));
                    (p.shift(i, r, -1), quotient(p.prod(num).neg(), &dens))
                })
                .collect();
            DiffOp::from_terms(nv, terms)
        }
        Generator::F => {
            let terms = (0..q.dim[i])
                .map(|r| {
                    let wr = p.w(i, r);
                    let mut num = Vec::new();
                    for (_, j) in q.arrows_out(i) {
                        num.extend(p.w_factors(j, &(wr.clone() + hbar(qf(1, 2)))));
                    }
                    let mut dens = vec![zeta.clone() - wr.clone() - hbar(qn(1))];
                    dens.extend(p.w_except(i, r, &wr));
                    (p.shift(i, r, 1), quotient(p.prod(num), &dens))
                })
                .collect();
            DiffOp::from_terms(nv, terms)
        }
    })
}

/// Coefficient of `ζ^{−p}` (`p ≥ 1`) in the expansion at infinity, taken
/// coefficient-wise; any polynomial part is discarded first.
pub fn series_coeff(x: &SpectralOp, vt: &VarTable, spectral: usize, p: usize) -> DiffOp {
    let var = vt.spectral(spectral);
    x.map_coeffs(|f| f.coeff_at_infinity(var, p))
}

/// `ζ_slot ↦ value` in every coefficient.
pub fn substitute_spectral(x: &SpectralOp, slot: usize, value: &Affine) -> Result<SpectralOp> {
    x.try_map_coeffs(|f| Ok(f.substitute(slot, value)?))
}

/// Principal part in a spectral slot, coefficient-wise.
pub fn principal_part(x: &SpectralOp, slot: usize) -> SpectralOp {
    x.map_coeffs(|f| f.principal_part(slot))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    HH,
    HE,
    HF,
    EE,
    FF,
    EF,
    SerreE,
    SerreF,
}

impl Relation {
    pub const ALL: [Relation; 8] =
        [Relation::HH, Relation::HE, Relation::HF, Relation::EE, Relation::FF, Relation::EF, Relation::SerreE, Relation::SerreF];

    pub fn is_serre(self) -> bool {
        matches!(self, Relation::SerreE | Relation::SerreF)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Relation {
    type Err = CbxError;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| CbxError::schema(Some("relations".into()), format!("unknown relation '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relation: String,
    pub vertices: Vec<String>,
    pub status: Status,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationReport {
    /// Compares two operators and records the first differing term.
    pub fn compare(relation: impl Into<String>, vertices: Vec<String>, lhs: &DiffOp, rhs: &DiffOp, vt: &VarTable) -> Self {
        let diff = lhs.sub(rhs);
        let witness = diff.terms().next().map(|(m, f)| format!("[{}] * {}", f.render(vt), m.render(vt)));
        VerificationReport {
            relation: relation.into(),
            vertices,
            status: if witness.is_none() { Status::Verified } else { Status::Failed },
            lhs_terms: lhs.len(),
            rhs_terms: rhs.len(),
            witness,
        }
    }

    /// Compares several labelled pairs; the witness names the first failing label.
    pub fn compare_many(relation: impl Into<String>, vertices: Vec<String>, pairs: &[(String, DiffOp, DiffOp)], vt: &VarTable) -> Self {
        let mut report = VerificationReport {
            relation: relation.into(),
            vertices,
            status: Status::Verified,
            lhs_terms: 0,
            rhs_terms: 0,
            witness: None,
        };
        for (label, lhs, rhs) in pairs {
            let one = VerificationReport::compare(label.clone(), vec![], lhs, rhs, vt);
            report.lhs_terms += one.lhs_terms;
            report.rhs_terms += one.rhs_terms;
            if report.witness.is_none() {
                if let Some(w) = one.witness {
                    report.status = Status::Failed;
                    report.witness = Some(format!("{label}: {w}"));
                }
            }
        }
        report
    }

    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

fn scalar_affine(nv: usize, a: Affine) -> RatFunc {
    RatFunc::from_affine(nv, &a)
}

/// Both sides of a defining relation for the ordered pair `(i, j)`.
pub fn relation_sides(q: &QuiverTheory, rel: Relation, i: usize, j: usize) -> Result<(DiffOp, DiffOp)> {
    require_no_loops(q)?;
    check_vertex(q, i)?;
    check_vertex(q, j)?;
    let vt = q.var_table();
    let nv = vt.len();
    let (s_z, s_y, s_z2) = (0, 1, 2);
    let (z, y) = (Affine::var(vt.spectral(s_z)), Affine::var(vt.spectral(s_y)));
    let cij = q.cartan()[i][j];
    // a = ½ α_i·α_j in units of ħ.
    let a = hbar(qf(cij, 2));
    let zy = z.clone() - y.clone();
    let img = |g: Generator, v: usize, s: usize| gklo_image(q, g, v, s);
    let zero = DiffOp::zero(nv);
    Ok(match rel {
        Relation::HH => {
            let (hi, hj) = (img(Generator::H, i, s_z)?, img(Generator::H, j, s_y)?);
            (hi.commutator(&hj), zero)
        }
        Relation::HE | Relation::HF => {
            let (gen, sign) = if rel == Relation::HE { (Generator::E, qn(1)) } else { (Generator::F, qn(-1)) };
            // a' = ±a: the HE form with a replaced by −a gives the HF form.
            let ap = a.clone() * sign;
            let hi = img(Generator::H, i, s_z)?;
            let xj = img(gen, j, s_y)?;
            let lhs = hi.mul(&xj).lmul(&scalar_affine(nv, zy.clone() - ap.clone()));
            let moved = substitute_spectral(&xj, vt.spectral(s_y), &(z.clone() - ap.clone()))?;
            let corr = moved.mul(&hi).lmul(&scalar_affine(nv, ap.clone() * qn(-2)));
            let rhs = xj.mul(&hi).lmul(&scalar_affine(nv, zy.clone() + ap)).add(&corr);
            (lhs, rhs)
        }
        Relation::EE | Relation::FF => {
            let (gen, sign) = if rel == Relation::EE { (Generator::E, qn(1)) } else { (Generator::F, qn(-1)) };
            let ap = a * sign;
            let xi = img(gen, i, s_z)?;
            let xj = img(gen, j, s_y)?;
            let xi1 = series_coeff(&xi, &vt, s_z, 1);
            let xj1 = series_coeff(&xj, &vt, s_y, 1);
            let lhs = xi.mul(&xj).lmul(&scalar_affine(nv, zy.clone() - ap.clone()));
            let rhs = xj
                .mul(&xi)
                .lmul(&scalar_affine(nv, zy.clone() + ap))
                .add(&xi1.commutator(&xj))
                .sub(&xi.commutator(&xj1));
            (lhs, rhs)
        }
        Relation::EF => {
            let ei = img(Generator::E, i, s_z)?;
            let fj = img(Generator::F, j, s_y)?;
            let lhs = ei.commutator(&fj).lmul(&scalar_affine(nv, zy));
            let rhs = if i == j {
                let hy = principal_part(&img(Generator::H, i, s_y)?, vt.spectral(s_y));
                let hz = principal_part(&img(Generator::H, i, s_z)?, vt.spectral(s_z));
                hy.sub(&hz).lmul(&RatFunc::var(nv, VarTable::HBAR))
            } else {
                zero
            };
            (lhs, rhs)
        }
        Relation::SerreE | Relation::SerreF => {
            if i == j {
                return Err(CbxError::IndexOutOfRange("Serre relations need two distinct vertices".into()));
            }
            let gen = if rel == Relation::SerreE { Generator::E } else { Generator::F };
            match cij {
                0 => (img(gen, i, s_z)?.commutator(&img(gen, j, s_y)?), zero),
                -1 => {
                    let xj = img(gen, j, s_y)?;
                    let x1 = img(gen, i, s_z)?;
                    let x2 = img(gen, i, s_z2)?;
                    let lhs = x1.commutator(&x2.commutator(&xj)).add(&x2.commutator(&x1.commutator(&xj)));
                    (lhs, zero)
                }
                _ => return Err(CbxError::Unsupported(format!("Serre relation for Cartan entry {cij}"))),
            }
        }
    })
}

/// Forms both sides of a relation, subtracts and reports.
pub fn check_relation(q: &QuiverTheory, rel: Relation, i: usize, j: usize) -> Result<VerificationReport> {
    let (lhs, rhs) = relation_sides(q, rel, i, j)?;
    let vt = q.var_table();
    Ok(VerificationReport::compare(rel.to_string(), vec![q.vertices[i].clone(), q.vertices[j].clone()], &lhs, &rhs, &vt))
}

/// Every listed relation for every ordered vertex pair (Serre relations
/// only for distinct vertices), checked in parallel.
pub fn relation_suite(q: &QuiverTheory, rels: &[Relation]) -> Result<Vec<VerificationReport>> {
    require_no_loops(q)?;
    let n = q.n_vertices();
    let jobs: Vec<(Relation, usize, usize)> = rels
        .iter()
        .flat_map(|&r| (0..n).flat_map(move |i| (0..n).map(move |j| (r, i, j))))
        .filter(|(r, i, j)| !(r.is_serre() && i == j))
        .collect();
    jobs.into_par_iter().map(|(r, i, j)| check_relation(q, r, i, j)).collect()
}

/// Expected filtration degree of `X_i^{(p)}`.
pub fn expected_degree(q: &QuiverTheory, gen: Generator, i: usize, p: usize) -> i64 {
    let p = p as i64;
    match gen {
        Generator::A => p,
        Generator::E => q.mu1_pairing(i) + p,
        Generator::F => q.mu2_pairing(i) + p,
        Generator::H => q.mu_pairing(i) + p,
    }
}

/// Homogeneous degree of the image of `X_i^{(p)}` with every `w`, `ħ`, `z_k`
/// of degree 1 and shifts of degree 0. The zero operator is homogeneous of
/// every degree; the expected degree is reported for it.
pub fn rees_check(q: &QuiverTheory, gen: Generator, i: usize, p: usize) -> Result<i64> {
    if p == 0 {
        return Err(CbxError::IndexOutOfRange("series coefficients start at p = 1".into()));
    }
    let vt = q.var_table();
    let op = series_coeff(&gklo_image(q, gen, i, 0)?, &vt, 0, p);
    if op.is_zero() {
        return Ok(expected_degree(q, gen, i, p));
    }
    op.homogeneity(&standard_weights(&vt), |_| 0).ok_or(CbxError::Inhomogeneous)
}

/// Whether `A_i^{(p)}` maps to zero for every `p` in `a_i+1 ..= a_i+extra`.
pub fn truncation(q: &QuiverTheory, i: usize, extra: usize) -> Result<bool> {
    let vt = q.var_table();
    let a = gklo_image(q, Generator::A, i, 0)?;
    Ok((q.dim[i] + 1..=q.dim[i] + extra).all(|p| series_coeff(&a, &vt, 0, p).is_zero()))
}

/// Rebuilds `E_i(ζ)` from its first coefficient: every shift term of `E_i`
/// has a single simple pole `ζ = w_{i,r}`, so the term is
/// `E_i^{(1)}|_{term} / (ζ − w_{i,r})`.
pub fn reconstruct_from_first_coeff(q: &QuiverTheory, i: usize) -> Result<SpectralOp> {
    let vt = q.var_table();
    let nv = vt.len();
    let e1 = series_coeff(&gklo_image(q, Generator::E, i, 0)?, &vt, 0, 1);
    let zeta = Affine::var(vt.spectral(0));
    let terms = e1
        .terms()
        .map(|(m, c)| {
            let slot = m.exps().iter().position(|&e| e != 0).expect("E terms carry one shift");
            let pole = RatFunc::inv_affine(nv, &(zeta.clone() - Affine::var(slot))).expect("nonzero form");
            (m.clone(), c.mul(&pole))
        })
        .collect();
    Ok(DiffOp::from_terms(nv, terms))
}

/// `Σ_{p=1}^{P} X^{(p)} ζ^{−p}` as an operator, for re-expansion checks.
pub fn truncated_series(x: &SpectralOp, vt: &VarTable, spectral: usize, pmax: usize) -> SpectralOp {
    let var = vt.spectral(spectral);
    let nv = vt.len();
    let mut out = DiffOp::zero(nv);
    for p in 1..=pmax {
        let c = series_coeff(x, vt, spectral, p);
        let zp = RatFunc::quotient(MPoly::one(nv), &vec![Affine::var(var); p]).expect("nonzero form");
        out = out.add(&c.lmul(&zp));
    }
    out
}
